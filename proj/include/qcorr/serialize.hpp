#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qcorr/bounds.hpp"
#include "qcorr/monogamy.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/states.hpp"

namespace qcorr::io {

using nlohmann::json;

// I/O and format problems (missing files, malformed JSON, bad schemas).
// Distinct from qcorr::Error so the CLI can map them to a different exit code.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- state files ----
// Schema: {"m": int, "n": int, "re": [[...]], "im": [[...]]}, row-major,
// basis index |i>_A (x) |j>_B -> i*n + j.
json state_to_json(const states::BipartiteState& s);
states::BipartiteState state_from_json(const json& j,
                                       const Tolerances& tol = default_tolerances());
states::BipartiteState read_state_file(const std::string& path,
                                       const Tolerances& tol = default_tolerances());
void write_state_file(const std::string& path, const states::BipartiteState& s);

// Schema: {"qubits": int, "re": [...], "im": [...]}, length 2^qubits.
json pure_to_json(const states::MultiQubitPureState& s);
states::MultiQubitPureState pure_from_json(const json& j,
                                           const Tolerances& tol = default_tolerances());
states::MultiQubitPureState read_amplitude_file(const std::string& path,
                                                const Tolerances& tol = default_tolerances());

// ---- matrices ----
json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j);

// ---- reports ----
json to_json(const bloch::BlochForm& b);
bloch::BlochForm bloch_form_from_json(const json& j);

json to_json(const bounds::MeasurementCandidate& c);
bounds::MeasurementCandidate candidate_from_json(const json& j);

json to_json(const bounds::BoundsReport& r);
bounds::BoundsReport bounds_report_from_json(const json& j);

json to_json(const oracle::OracleResult& r);
oracle::OracleResult oracle_result_from_json(const json& j);

json to_json(const oracle::GapReport& r);
oracle::GapReport gap_report_from_json(const json& j);

json to_json(const monogamy::MonogamyReport& r);
monogamy::MonogamyReport monogamy_report_from_json(const json& j);

// FNV-1a 64-bit digest of a canonical text rendering, as a hex string.
std::string digest_hex(const states::BipartiteState& s);
std::string digest_hex(const states::MultiQubitPureState& s);

// 17-significant-digit rendering used by the CSV writer.
std::string format_real(double v);

} // namespace qcorr::io
