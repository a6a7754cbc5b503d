#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qcorr/bloch.hpp"
#include "qcorr/states.hpp"

namespace qcorr::bounds {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Orthogonal completion family used to reconstruct measurement operators from
// the relaxed optimum. Helmert works for every m and is the default;
// Hadamard is available for m-1 in {4, 8}.
enum class CompletionBasis { Helmert, Hadamard };

struct RelaxationOptions {
  CompletionBasis basis = CompletionBasis::Helmert;
};

// Everything produced by the eigenvalue relaxation of the measurement
// optimization: the weighted correlation matrix G, its spectrum, and the
// coefficient rows a_k of the first m-1 reconstructed operators.
struct RelaxationData {
  int m = 0;
  int n = 0;
  MatrixXd G;              // (2/m) x x^t + (4/mn) T T^t, symmetric
  states::Spectrum spectrum;
  MatrixXd a_vectors;      // (m-1) x (m^2-1), rows a_k
  MatrixXd helmert;        // U_{m-1}, orthogonal, last column (1,..,1)/sqrt(m-1)
};

// m Hermitian unit-trace operators summing to the identity. They form a
// genuine rank-1 von Neumann measurement exactly when every operator is PSD
// and idempotent, which is what valid() reports.
struct MeasurementCandidate {
  std::vector<MatrixXcd> operators;
  bool each_trace_one = false;
  std::vector<bool> psd;
  std::vector<bool> idempotent;
  bool complete = false;
  std::vector<double> min_eigs;        // per-operator smallest eigenvalue
  std::vector<double> idem_residuals;  // per-operator ||P^2 - P||_F

  bool valid() const;
};

struct BoundsReport {
  int m = 0;
  int n = 0;
  double gd_lower = 0.0;
  double gd_lower_raw = 0.0; // before the [0, inf) clamp
  double min_upper = 0.0;
  std::optional<double> gd_exact;
  std::optional<double> min_exact;
  bool saturated = false;
  bool d_equals_n_condition = false; // x = 0 and fully degenerate G
  MeasurementCandidate candidate;
};

// k x k orthogonal matrix with normalized Helmert columns; last column is the
// normalized all-ones vector.
MatrixXd helmert_matrix(int k);

// Normalized Sylvester Hadamard matrix with the all-ones column moved last;
// k must be 4 or 8.
MatrixXd hadamard_completion(int k);

RelaxationData relaxation(const bloch::BlochForm& b, RelaxationOptions opts = {},
                          const Tolerances& tol = default_tolerances());

// (1/mn) [ (2/m)||x||^2 + (4/mn)||T||^2 - sum of the m-1 largest eigenvalues
// of G ], clamped to [0, inf).
double gd_lower_bound(const bloch::BlochForm& b, const Tolerances& tol = default_tolerances());

// (4/(m^2 n^2)) * sum of the m^2-m largest eigenvalues of T T^t.
double min_upper_bound(const bloch::BlochForm& b, const Tolerances& tol = default_tolerances());

// Operators op_k = I/m + (1/sqrt 2) sum_i a_ki lambda_i for k < m, and
// op_m = I - sum of the others, with validity flags.
MeasurementCandidate candidate_measurement(const RelaxationData& r,
                                           const Tolerances& tol = default_tolerances());

// Flags an arbitrary operator list as a measurement candidate.
MeasurementCandidate make_candidate(std::vector<MatrixXcd> operators,
                                    const Tolerances& tol = default_tolerances());

// Exact GD when attainment can be certified: either the candidate is a
// genuine measurement (always for m = 2), or the eigenbasis measurement of
// rho_A reaches the lower bound. Absent otherwise.
std::optional<double> certify_saturation(const bloch::BlochForm& b,
                                         const MeasurementCandidate& c,
                                         const Tolerances& tol = default_tolerances());

// Closed forms (mz-1)^2 / (m(m-1)(m+1)^2) and (m^2 z-1)^2 / (m(m-1)(m+1)^2).
// Independent of the Bloch pipeline so they can serve as regression oracles.
double werner_gd(int m, double z);
double isotropic_gd(int m, double z);

// Squared Frobenius disturbance ||rho - sum_k (op_k (x) I) rho (op_k (x) I)||^2
// for a genuine measurement; also verifies the identity with
// Tr(C C^t) - Tr(A C C^t A^t).
double measurement_value(const states::BipartiteState& s, const MeasurementCandidate& c,
                         const Tolerances& tol = default_tolerances());

// Both routes to the value, for diagnostics: {direct Frobenius, C-matrix form}.
std::pair<double, double> measurement_value_routes(const states::BipartiteState& s,
                                                   const MeasurementCandidate& c,
                                                   const Tolerances& tol = default_tolerances());

// Full report: bounds, candidate, certification and the D = N condition.
BoundsReport analyze(const states::BipartiteState& s, RelaxationOptions opts = {},
                     const Tolerances& tol = default_tolerances());

// Measurement-disturbance evaluator in the C-matrix picture. Shared by the
// certification fallback and the numerical oracle.
class ValueEvaluator {
 public:
  static ValueEvaluator from_bloch(const bloch::BlochForm& b);

  // A is m x m^2, rows (Tr(op_k)/sqrt m, operator_row(op_k)).
  double value_from_rows(const MatrixXd& a) const;

  // Genuine measurement given by the columns of a unitary.
  double value_unitary(const MatrixXcd& u) const;

  int m() const { return m_; }
  double trace_cc() const { return tr_cc_; }

 private:
  int m_ = 0;
  MatrixXd cc_;       // C C^t
  double tr_cc_ = 0.0;
};

} // namespace qcorr::bounds
