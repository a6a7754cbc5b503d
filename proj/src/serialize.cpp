#include "qcorr/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace qcorr::io {

namespace {

const json& require(const json& j, const char* field, const char* context) {
  auto it = j.find(field);
  if (it == j.end()) {
    throw FileError(std::string(context) + ": missing field '" + field + "'");
  }
  return *it;
}

Eigen::MatrixXd real_matrix_from_json(const json& j, int rows, int cols, const char* context) {
  if (!j.is_array() || int(j.size()) != rows) {
    throw FileError(std::string(context) + ": expected " + std::to_string(rows) + " rows");
  }
  Eigen::MatrixXd out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[std::size_t(r)];
    if (!row.is_array() || int(row.size()) != cols) {
      throw FileError(std::string(context) + ": row " + std::to_string(r) + " must have " +
                      std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) out(r, c) = row[std::size_t(c)].get<double>();
  }
  return out;
}

json real_matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd real_vector_from_json(const json& j) {
  Eigen::VectorXd out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out(Eigen::Index(i)) = j[i].get<double>();
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw FileError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void append_digest(std::uint64_t& h, const std::string& text) {
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  return json{{"re", real_matrix_to_json(m.real())}, {"im", real_matrix_to_json(m.imag())}};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  const json& re = require(j, "re", "matrix");
  if (!re.is_array() || re.empty()) throw FileError("matrix: field 're' must be a nonempty array");
  const int rows = int(re.size());
  const int cols = int(re[0].size());
  Eigen::MatrixXd real = real_matrix_from_json(re, rows, cols, "matrix 're'");
  Eigen::MatrixXd imag = real_matrix_from_json(require(j, "im", "matrix"), rows, cols, "matrix 'im'");
  return real.cast<std::complex<double>>() +
         std::complex<double>(0.0, 1.0) * imag.cast<std::complex<double>>();
}

json state_to_json(const states::BipartiteState& s) {
  json j = matrix_to_json(s.rho);
  j["m"] = s.m;
  j["n"] = s.n;
  return j;
}

states::BipartiteState state_from_json(const json& j, const Tolerances& tol) {
  const int m = require(j, "m", "state file").get<int>();
  const int n = require(j, "n", "state file").get<int>();
  const int d = m * n;
  Eigen::MatrixXd re = real_matrix_from_json(require(j, "re", "state file"), d, d, "state file 're'");
  Eigen::MatrixXd im = real_matrix_from_json(require(j, "im", "state file"), d, d, "state file 'im'");
  const Eigen::MatrixXcd rho = re.cast<std::complex<double>>() +
                               std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>();
  return states::validate_state(rho, m, n, tol);
}

states::BipartiteState read_state_file(const std::string& path, const Tolerances& tol) {
  return state_from_json(load_json_file(path), tol);
}

void write_state_file(const std::string& path, const states::BipartiteState& s) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write file: " + path);
  out << state_to_json(s).dump(2) << "\n";
}

json pure_to_json(const states::MultiQubitPureState& s) {
  json j;
  j["qubits"] = s.num_qubits;
  j["re"] = real_vector_to_json(s.amplitudes.real());
  j["im"] = real_vector_to_json(s.amplitudes.imag());
  return j;
}

states::MultiQubitPureState pure_from_json(const json& j, const Tolerances& tol) {
  const int nq = require(j, "qubits", "amplitude file").get<int>();
  const Eigen::VectorXd re = real_vector_from_json(require(j, "re", "amplitude file"));
  const Eigen::VectorXd im = real_vector_from_json(require(j, "im", "amplitude file"));
  if (re.size() != im.size()) throw FileError("amplitude file: 're' and 'im' lengths differ");
  const Eigen::VectorXcd amp = re.cast<std::complex<double>>() +
                               std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>();
  return states::make_pure(nq, amp, tol);
}

states::MultiQubitPureState read_amplitude_file(const std::string& path, const Tolerances& tol) {
  return pure_from_json(load_json_file(path), tol);
}

json to_json(const bloch::BlochForm& b) {
  return json{{"m", b.m},
              {"n", b.n},
              {"x", real_vector_to_json(b.x)},
              {"y", real_vector_to_json(b.y)},
              {"T", real_matrix_to_json(b.T)}};
}

bloch::BlochForm bloch_form_from_json(const json& j) {
  bloch::BlochForm b;
  b.m = require(j, "m", "bloch form").get<int>();
  b.n = require(j, "n", "bloch form").get<int>();
  b.x = real_vector_from_json(require(j, "x", "bloch form"));
  b.y = real_vector_from_json(require(j, "y", "bloch form"));
  b.T = real_matrix_from_json(require(j, "T", "bloch form"), b.m * b.m - 1, b.n * b.n - 1,
                              "bloch form 'T'");
  return b;
}

json to_json(const bounds::MeasurementCandidate& c) {
  json ops = json::array();
  for (const auto& op : c.operators) ops.push_back(matrix_to_json(op));
  return json{{"operators", std::move(ops)},
              {"each_trace_one", c.each_trace_one},
              {"psd", c.psd},
              {"idempotent", c.idempotent},
              {"complete", c.complete},
              {"min_eigs", c.min_eigs},
              {"idem_residuals", c.idem_residuals},
              {"valid", c.valid()}};
}

bounds::MeasurementCandidate candidate_from_json(const json& j) {
  bounds::MeasurementCandidate c;
  for (const auto& op : require(j, "operators", "measurement")) {
    c.operators.push_back(matrix_from_json(op));
  }
  c.each_trace_one = require(j, "each_trace_one", "measurement").get<bool>();
  c.psd = require(j, "psd", "measurement").get<std::vector<bool>>();
  c.idempotent = require(j, "idempotent", "measurement").get<std::vector<bool>>();
  c.complete = require(j, "complete", "measurement").get<bool>();
  c.min_eigs = require(j, "min_eigs", "measurement").get<std::vector<double>>();
  c.idem_residuals = require(j, "idem_residuals", "measurement").get<std::vector<double>>();
  return c;
}

json to_json(const bounds::BoundsReport& r) {
  json j{{"m", r.m},
         {"n", r.n},
         {"gd_lower", r.gd_lower},
         {"gd_lower_raw", r.gd_lower_raw},
         {"min_upper", r.min_upper},
         {"saturated", r.saturated},
         {"d_equals_n_condition", r.d_equals_n_condition},
         {"candidate", to_json(r.candidate)}};
  j["gd_exact"] = r.gd_exact ? json(*r.gd_exact) : json(nullptr);
  j["min_exact"] = r.min_exact ? json(*r.min_exact) : json(nullptr);
  return j;
}

bounds::BoundsReport bounds_report_from_json(const json& j) {
  bounds::BoundsReport r;
  r.m = require(j, "m", "bounds report").get<int>();
  r.n = require(j, "n", "bounds report").get<int>();
  r.gd_lower = require(j, "gd_lower", "bounds report").get<double>();
  r.gd_lower_raw = require(j, "gd_lower_raw", "bounds report").get<double>();
  r.min_upper = require(j, "min_upper", "bounds report").get<double>();
  r.saturated = require(j, "saturated", "bounds report").get<bool>();
  r.d_equals_n_condition = require(j, "d_equals_n_condition", "bounds report").get<bool>();
  r.candidate = candidate_from_json(require(j, "candidate", "bounds report"));
  const json& ge = require(j, "gd_exact", "bounds report");
  if (!ge.is_null()) r.gd_exact = ge.get<double>();
  const json& me = require(j, "min_exact", "bounds report");
  if (!me.is_null()) r.min_exact = me.get<double>();
  return r;
}

json to_json(const oracle::OracleResult& r) {
  json j{{"best_value", r.best_value},
         {"per_restart_values", r.per_restart_values},
         {"best_measurement", to_json(r.best_measurement)}};
  j["constraint_residual"] = r.constraint_residual ? json(*r.constraint_residual) : json(nullptr);
  return j;
}

oracle::OracleResult oracle_result_from_json(const json& j) {
  oracle::OracleResult r;
  r.best_value = require(j, "best_value", "oracle result").get<double>();
  r.per_restart_values =
      require(j, "per_restart_values", "oracle result").get<std::vector<double>>();
  r.best_measurement = candidate_from_json(require(j, "best_measurement", "oracle result"));
  const json& cr = require(j, "constraint_residual", "oracle result");
  if (!cr.is_null()) r.constraint_residual = cr.get<double>();
  return r;
}

json to_json(const oracle::GapReport& r) {
  return json{{"gd_lower", r.gd_lower},
              {"oracle_gd", r.oracle_gd},
              {"min_upper", r.min_upper},
              {"oracle_min", r.oracle_min},
              {"gd_gap", r.gd_gap},
              {"min_gap", r.min_gap},
              {"min_constraint_residual", r.min_constraint_residual}};
}

oracle::GapReport gap_report_from_json(const json& j) {
  oracle::GapReport r;
  r.gd_lower = require(j, "gd_lower", "gap report").get<double>();
  r.oracle_gd = require(j, "oracle_gd", "gap report").get<double>();
  r.min_upper = require(j, "min_upper", "gap report").get<double>();
  r.oracle_min = require(j, "oracle_min", "gap report").get<double>();
  r.gd_gap = require(j, "gd_gap", "gap report").get<double>();
  r.min_gap = require(j, "min_gap", "gap report").get<double>();
  r.min_constraint_residual = require(j, "min_constraint_residual", "gap report").get<double>();
  return r;
}

json to_json(const monogamy::MonogamyReport& r) {
  return json{{"num_qubits", r.num_qubits},
              {"pair_discords", real_vector_to_json(r.pair_discords)},
              {"cut_discord", r.cut_discord},
              {"lhs_sum", r.lhs_sum},
              {"deficit", r.deficit},
              {"satisfied", r.satisfied}};
}

monogamy::MonogamyReport monogamy_report_from_json(const json& j) {
  monogamy::MonogamyReport r;
  r.num_qubits = require(j, "num_qubits", "monogamy report").get<int>();
  r.pair_discords = real_vector_from_json(require(j, "pair_discords", "monogamy report"));
  r.cut_discord = require(j, "cut_discord", "monogamy report").get<double>();
  r.lhs_sum = require(j, "lhs_sum", "monogamy report").get<double>();
  r.deficit = require(j, "deficit", "monogamy report").get<double>();
  r.satisfied = require(j, "satisfied", "monogamy report").get<bool>();
  return r;
}

std::string digest_hex(const states::BipartiteState& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  append_digest(h, std::to_string(s.m) + "x" + std::to_string(s.n));
  for (int r = 0; r < s.rho.rows(); ++r) {
    for (int c = 0; c < s.rho.cols(); ++c) {
      append_digest(h, format_real(s.rho(r, c).real()));
      append_digest(h, format_real(s.rho(r, c).imag()));
    }
  }
  return hex64(h);
}

std::string digest_hex(const states::MultiQubitPureState& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  append_digest(h, "q" + std::to_string(s.num_qubits));
  for (int i = 0; i < s.amplitudes.size(); ++i) {
    append_digest(h, format_real(s.amplitudes(i).real()));
    append_digest(h, format_real(s.amplitudes(i).imag()));
  }
  return hex64(h);
}

} // namespace qcorr::io
