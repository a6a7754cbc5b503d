#include "qcorr/bounds.hpp"

#include <cmath>

namespace qcorr::bounds {

namespace {

MatrixXd weighted_gram(const bloch::BlochForm& b) {
  const double mn = double(b.m) * b.n;
  return (2.0 / b.m) * (b.x * b.x.transpose()) + (4.0 / mn) * (b.T * b.T.transpose());
}

// Hermitian operator with unit trace and coefficient row a in the generator
// basis: op = I/d + (1/sqrt 2) sum_i a_i lambda_i.
MatrixXcd row_to_operator(const VectorXd& a, int d) {
  const bloch::GeneratorBasis basis = bloch::gell_mann_basis(d);
  MatrixXcd op = MatrixXcd::Identity(d, d) / double(d);
  const double inv_s2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < a.size(); ++i) op += inv_s2 * a(i) * basis.lambdas[i];
  return op;
}

MatrixXcd reduced_a(const bloch::BlochForm& b) {
  const bloch::GeneratorBasis basis = bloch::gell_mann_basis(b.m);
  MatrixXcd rho_a = MatrixXcd::Identity(b.m, b.m);
  for (int i = 0; i < b.x.size(); ++i) rho_a += b.x(i) * basis.lambdas[i];
  return rho_a / double(b.m);
}

} // namespace

bool MeasurementCandidate::valid() const {
  if (operators.empty() || !each_trace_one || !complete) return false;
  for (std::size_t k = 0; k < operators.size(); ++k) {
    if (!psd[k] || !idempotent[k]) return false;
  }
  return true;
}

MatrixXd helmert_matrix(int k) {
  if (k < 1) throw BadParameter("Helmert matrix order must be >= 1");
  MatrixXd u = MatrixXd::Zero(k, k);
  for (int j = 0; j + 1 < k; ++j) {
    const double norm = std::sqrt(double(j + 1) * (j + 2));
    for (int r = 0; r <= j; ++r) u(r, j) = 1.0 / norm;
    u(j + 1, j) = -double(j + 1) / norm;
  }
  u.col(k - 1).setConstant(1.0 / std::sqrt(double(k)));
  return u;
}

MatrixXd hadamard_completion(int k) {
  if (k != 4 && k != 8) throw BadParameter("Hadamard completion supports orders 4 and 8 only");
  MatrixXd h(1, 1);
  h(0, 0) = 1.0;
  while (h.rows() < k) {
    MatrixXd next(h.rows() * 2, h.cols() * 2);
    next << h, h, h, -h;
    h = next;
  }
  h /= std::sqrt(double(k));
  // move the all-ones column to the last position
  MatrixXd u(k, k);
  u.leftCols(k - 1) = h.rightCols(k - 1);
  u.col(k - 1) = h.col(0);
  return u;
}

RelaxationData relaxation(const bloch::BlochForm& b, RelaxationOptions opts,
                          const Tolerances& tol) {
  RelaxationData r;
  r.m = b.m;
  r.n = b.n;
  r.G = weighted_gram(b);
  r.spectrum = states::hermitian_eig(r.G, tol);
  r.helmert = (opts.basis == CompletionBasis::Helmert) ? helmert_matrix(b.m - 1)
                                                       : hadamard_completion(b.m - 1);

  // a_k = r_k Vt with r_k the k-th row of U_{m-1} diag(1,..,1,1/sqrt m) and
  // Vt the first m-1 rows of the (descending) eigenvector matrix transposed.
  const int rows = b.m - 1;
  const int cols = b.m * b.m - 1;
  r.a_vectors.resize(rows, cols);
  const MatrixXd v = r.spectrum.eigenvectors.real();
  for (int k = 0; k < rows; ++k) {
    VectorXd rk = r.helmert.row(k);
    rk(rows - 1) /= std::sqrt(double(b.m));
    VectorXd a = VectorXd::Zero(cols);
    for (int j = 0; j < rows; ++j) a += rk(j) * v.col(j);
    r.a_vectors.row(k) = a;
  }
  return r;
}

double gd_lower_bound(const bloch::BlochForm& b, const Tolerances& tol) {
  const MatrixXd g = weighted_gram(b);
  const states::Spectrum spec = states::hermitian_eig(g, tol);
  double top = 0.0;
  for (int k = 0; k < b.m - 1; ++k) top += spec.eigenvalues(k);
  const double raw = (g.trace() - top) / (double(b.m) * b.n);
  return raw < 0.0 ? 0.0 : raw;
}

double min_upper_bound(const bloch::BlochForm& b, const Tolerances& tol) {
  const MatrixXd tt = b.T * b.T.transpose();
  const states::Spectrum spec = states::hermitian_eig(tt, tol);
  const int keep = b.m * b.m - b.m;
  double sum = 0.0;
  for (int k = 0; k < keep; ++k) sum += spec.eigenvalues(k);
  const double mn = double(b.m) * b.n;
  const double value = 4.0 / (mn * mn) * sum;
  return value < 0.0 ? 0.0 : value;
}

MeasurementCandidate make_candidate(std::vector<MatrixXcd> operators, const Tolerances& tol) {
  MeasurementCandidate c;
  c.operators = std::move(operators);
  const int d = int(c.operators.front().rows());
  c.each_trace_one = true;
  MatrixXcd sum = MatrixXcd::Zero(d, d);
  for (const auto& op : c.operators) {
    if (std::abs(op.trace() - std::complex<double>(1.0, 0.0)) > tol.measurement_trace) {
      c.each_trace_one = false;
    }
    sum += op;
    const states::Spectrum spec = states::hermitian_eig(op, tol);
    const double min_eig = spec.eigenvalues(d - 1);
    c.min_eigs.push_back(min_eig);
    c.psd.push_back(min_eig >= tol.measurement_psd);
    const double idem = (op * op - op).norm();
    c.idem_residuals.push_back(idem);
    c.idempotent.push_back(idem <= tol.measurement_idempotent);
  }
  c.complete = (sum - MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() <= tol.measurement_trace;
  return c;
}

MeasurementCandidate candidate_measurement(const RelaxationData& r, const Tolerances& tol) {
  std::vector<MatrixXcd> ops;
  ops.reserve(r.m);
  MatrixXcd sum = MatrixXcd::Zero(r.m, r.m);
  for (int k = 0; k + 1 < r.m; ++k) {
    ops.push_back(row_to_operator(r.a_vectors.row(k), r.m));
    sum += ops.back();
  }
  ops.push_back(MatrixXcd::Identity(r.m, r.m) - sum);
  return make_candidate(std::move(ops), tol);
}

std::optional<double> certify_saturation(const bloch::BlochForm& b, const MeasurementCandidate& c,
                                         const Tolerances& tol) {
  const double lower = gd_lower_bound(b, tol);
  if (c.valid()) return lower; // the candidate attains the relaxed optimum

  // The candidate can fail PSD for m >= 3. The bound may still be attained by
  // an ordinary measurement; probing the eigenbasis of rho_A covers the fully
  // degenerate relaxations (maximally mixed, Werner, isotropic).
  const states::Spectrum spec = states::hermitian_eig(reduced_a(b), tol);
  const ValueEvaluator ev = ValueEvaluator::from_bloch(b);
  const double attained = ev.value_unitary(spec.eigenvectors);
  if (attained <= lower + tol.value_identity) return lower;
  return std::nullopt;
}

double werner_gd(int m, double z) {
  if (m < 2) throw BadParameter("Werner closed form needs m >= 2");
  if (z < -1.0 || z > 1.0) throw BadParameter("Werner parameter z must be in [-1, 1]");
  const double num = (m * z - 1.0) * (m * z - 1.0);
  return num / (double(m) * (m - 1.0) * (m + 1.0) * (m + 1.0));
}

double isotropic_gd(int m, double z) {
  if (m < 2) throw BadParameter("isotropic closed form needs m >= 2");
  if (z < 0.0 || z > 1.0) throw BadParameter("isotropic parameter z must be in [0, 1]");
  const double num = (double(m) * m * z - 1.0) * (double(m) * m * z - 1.0);
  return num / (double(m) * (m - 1.0) * (m + 1.0) * (m + 1.0));
}

std::pair<double, double> measurement_value_routes(const states::BipartiteState& s,
                                                   const MeasurementCandidate& c,
                                                   const Tolerances& tol) {
  if (!c.valid()) {
    throw InvalidMeasurement("measurement_value requires a genuine von Neumann measurement");
  }
  const int m = s.m, n = s.n;
  // direct route
  MatrixXcd pinched = MatrixXcd::Zero(s.dim(), s.dim());
  const MatrixXcd eye_n = MatrixXcd::Identity(n, n);
  for (const auto& op : c.operators) {
    MatrixXcd big(s.dim(), s.dim());
    for (int a = 0; a < m; ++a)
      for (int bb = 0; bb < m; ++bb) big.block(a * n, bb * n, n, n) = op(a, bb) * eye_n;
    pinched += big * s.rho * big;
  }
  const double direct = (s.rho - pinched).squaredNorm();

  // C-matrix route
  const bloch::BlochForm b = bloch::decompose(s);
  const ValueEvaluator ev = ValueEvaluator::from_bloch(b);
  MatrixXd rows(m, m * m);
  for (int k = 0; k < m; ++k) {
    rows(k, 0) = c.operators[k].trace().real() / std::sqrt(double(m));
    rows.row(k).tail(m * m - 1) = bloch::operator_row(c.operators[k]);
  }
  const double via_c = ev.value_from_rows(rows);
  (void)tol;
  return {direct, via_c};
}

double measurement_value(const states::BipartiteState& s, const MeasurementCandidate& c,
                         const Tolerances& tol) {
  const auto [direct, via_c] = measurement_value_routes(s, c, tol);
  if (std::abs(direct - via_c) > tol.value_identity) {
    throw Error("measurement value identity violated: direct " + std::to_string(direct) +
                " vs C-matrix form " + std::to_string(via_c));
  }
  return direct;
}

BoundsReport analyze(const states::BipartiteState& s, RelaxationOptions opts,
                     const Tolerances& tol) {
  const bloch::BlochForm b = bloch::decompose(s);
  const RelaxationData r = relaxation(b, opts, tol);

  BoundsReport report;
  report.m = s.m;
  report.n = s.n;
  double top = 0.0;
  for (int k = 0; k + 1 < s.m; ++k) top += r.spectrum.eigenvalues(k);
  report.gd_lower_raw = (r.G.trace() - top) / (double(s.m) * s.n);
  report.gd_lower = report.gd_lower_raw < 0.0 ? 0.0 : report.gd_lower_raw;
  report.min_upper = min_upper_bound(b, tol);
  report.candidate = candidate_measurement(r, tol);
  report.gd_exact = certify_saturation(b, report.candidate, tol);

  const int nev = int(r.spectrum.eigenvalues.size());
  const double spread = r.spectrum.eigenvalues(0) - r.spectrum.eigenvalues(nev - 1);
  report.d_equals_n_condition =
      b.x.cwiseAbs().maxCoeff() <= tol.coincidence && spread <= tol.coincidence;

  if (report.d_equals_n_condition && !report.gd_exact) {
    // x = 0 makes every measurement feasible for MIN, so GD <= MIN; with a
    // fully degenerate G the two bounds coincide and squeeze both measures.
    report.gd_exact = report.gd_lower;
  }
  report.saturated = report.gd_exact.has_value();
  if (report.d_equals_n_condition && report.saturated) report.min_exact = report.min_upper;
  return report;
}

ValueEvaluator ValueEvaluator::from_bloch(const bloch::BlochForm& b) {
  ValueEvaluator ev;
  ev.m_ = b.m;
  const MatrixXd c = bloch::c_matrix(b).entries;
  ev.cc_ = c * c.transpose();
  ev.tr_cc_ = ev.cc_.trace();
  return ev;
}

double ValueEvaluator::value_from_rows(const MatrixXd& a) const {
  double f = 0.0;
  for (int k = 0; k < a.rows(); ++k) f += a.row(k) * cc_ * a.row(k).transpose();
  return tr_cc_ - f;
}

double ValueEvaluator::value_unitary(const MatrixXcd& u) const {
  const double inv_sqrt_m = 1.0 / std::sqrt(double(m_));
  double f = 0.0;
  VectorXd row(m_ * m_);
  for (int k = 0; k < m_; ++k) {
    row(0) = inv_sqrt_m;
    row.tail(m_ * m_ - 1) = bloch::projector_row(u.col(k));
    f += row.dot(cc_ * row);
  }
  return tr_cc_ - f;
}

} // namespace qcorr::bounds
