#include "qcorr/oracle.hpp"

#include <cmath>

namespace qcorr::oracle {

namespace {

void check_config(const OracleConfig& cfg) {
  if (cfg.restarts < 1) throw BadParameter("oracle needs restarts >= 1");
  if (cfg.iterations < 1) throw BadParameter("oracle needs iterations >= 1");
  if (!(cfg.step_decay > 0.0 && cfg.step_decay < 1.0)) {
    throw BadParameter("oracle step decay must lie in (0, 1)");
  }
  if (!(cfg.initial_step > 0.0)) throw BadParameter("oracle initial step must be positive");
}

// Right-multiplies columns (p, q) of u by exp(i theta (g . sigma)).
void apply_two_level(MatrixXcd& u, int p, int q, double theta, double g1, double g2, double g3) {
  const double norm = std::sqrt(g1 * g1 + g2 * g2 + g3 * g3);
  if (norm < 1e-300) return;
  const double phi = theta * norm;
  const double c = std::cos(phi);
  const double s = std::sin(phi) / norm;
  const std::complex<double> w00(c, s * g3);
  const std::complex<double> w01(s * g2, s * g1);
  const std::complex<double> w10(-s * g2, s * g1);
  const std::complex<double> w11(c, -s * g3);
  for (int r = 0; r < u.rows(); ++r) {
    const std::complex<double> up = u(r, p), uq = u(r, q);
    u(r, p) = up * w00 + uq * w10;
    u(r, q) = up * w01 + uq * w11;
  }
}

struct ClimbResult {
  MatrixXcd u;
  double value;
};

// Greedy hill climb over the pair list; maximize flips the comparison.
ClimbResult climb(const bounds::ValueEvaluator& ev, MatrixXcd u,
                  const std::vector<std::pair<int, int>>& pairs, const OracleConfig& cfg,
                  Rng& rng, bool maximize) {
  double value = ev.value_unitary(u);
  double step = cfg.initial_step;
  MatrixXcd trial = u;
  for (int it = 0; it < cfg.iterations; ++it) {
    const auto [p, q] = pairs[std::size_t(rng.uniform_int(int(pairs.size())))];
    const double g1 = rng.gaussian(), g2 = rng.gaussian(), g3 = rng.gaussian();
    const double theta = step * rng.gaussian();
    trial = u;
    apply_two_level(trial, p, q, theta, g1, g2, g3);
    const double trial_value = ev.value_unitary(trial);
    const bool better = maximize ? trial_value > value : trial_value < value;
    if (better) {
      u = trial;
      value = trial_value;
    }
    step *= cfg.step_decay;
  }
  return {std::move(u), value};
}

std::vector<std::pair<int, int>> all_pairs(int m) {
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) pairs.emplace_back(p, q);
  return pairs;
}

// Off-diagonal Frobenius norm of U† rho_A U, which equals the disturbance of
// rho_A under the measurement given by the columns of U.
double constraint_residual(const MatrixXcd& u, const MatrixXcd& rho_a) {
  const MatrixXcd r = u.adjoint() * rho_a * u;
  return (r - MatrixXcd(r.diagonal().asDiagonal())).norm();
}

} // namespace

bounds::MeasurementCandidate measurement_from_unitary(const MatrixXcd& u, const Tolerances& tol) {
  if (u.rows() != u.cols()) throw NotUnitary("measurement basis matrix must be square");
  const int m = int(u.rows());
  const double dev = (u.adjoint() * u - MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (dev > tol.unitarity) {
    throw NotUnitary("matrix is not unitary: max-abs(U†U - I) = " + std::to_string(dev));
  }
  std::vector<MatrixXcd> ops;
  ops.reserve(m);
  for (int k = 0; k < m; ++k) ops.push_back(u.col(k) * u.col(k).adjoint());
  return bounds::make_candidate(std::move(ops), tol);
}

OracleResult oracle_gd(const states::BipartiteState& s, const OracleConfig& cfg,
                       const Tolerances& tol) {
  check_config(cfg);
  const bounds::ValueEvaluator ev = bounds::ValueEvaluator::from_bloch(bloch::decompose(s));
  const auto pairs = all_pairs(s.m);
  const Rng base(cfg.seed);

  OracleResult out;
  out.per_restart_values.reserve(cfg.restarts);
  MatrixXcd best_u;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = base.derive(2 * std::uint64_t(r));
    MatrixXcd u0 = states::random_unitary(s.m, rng);
    ClimbResult res = climb(ev, std::move(u0), pairs, cfg, rng, /*maximize=*/false);
    out.per_restart_values.push_back(res.value);
    if (r == 0 || res.value < out.best_value) {
      out.best_value = res.value;
      best_u = std::move(res.u);
    }
  }
  out.best_measurement = measurement_from_unitary(best_u, tol);
  return out;
}

OracleResult oracle_min(const states::BipartiteState& s, const OracleConfig& cfg,
                        const Tolerances& tol) {
  check_config(cfg);
  const bounds::ValueEvaluator ev = bounds::ValueEvaluator::from_bloch(bloch::decompose(s));
  const MatrixXcd rho_a = states::partial_trace(s, states::Side::A);
  const states::Spectrum spec = states::hermitian_eig(rho_a, tol);

  // Degenerate eigenvalue blocks of rho_A; measurements feasible for MIN are
  // exactly the block-unitary rotations of the eigenbasis.
  std::vector<std::pair<int, int>> blocks; // [begin, end)
  int begin = 0;
  for (int j = 1; j <= s.m; ++j) {
    if (j == s.m || spec.eigenvalues(j - 1) - spec.eigenvalues(j) > tol.degeneracy_gap) {
      blocks.emplace_back(begin, j);
      begin = j;
    }
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [lo, hi] : blocks)
    for (int p = lo; p < hi; ++p)
      for (int q = p + 1; q < hi; ++q) pairs.emplace_back(p, q);

  OracleResult out;
  if (pairs.empty()) {
    // nondegenerate rho_A: the eigenbasis is the unique feasible measurement
    const MatrixXcd u = spec.eigenvectors;
    out.best_value = ev.value_unitary(u);
    out.per_restart_values = {out.best_value};
    out.best_measurement = measurement_from_unitary(u, tol);
    out.constraint_residual = constraint_residual(u, rho_a);
    return out;
  }

  const Rng base(cfg.seed);
  MatrixXcd best_u;
  out.per_restart_values.reserve(cfg.restarts);
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = base.derive(2 * std::uint64_t(r) + 1);
    MatrixXcd u = spec.eigenvectors;
    for (const auto& [lo, hi] : blocks) {
      const int width = hi - lo;
      if (width < 2) continue;
      u.middleCols(lo, width) = u.middleCols(lo, width) * states::random_unitary(width, rng);
    }
    ClimbResult res = climb(ev, std::move(u), pairs, cfg, rng, /*maximize=*/true);
    out.per_restart_values.push_back(res.value);
    if (r == 0 || res.value > out.best_value) {
      out.best_value = res.value;
      best_u = std::move(res.u);
    }
  }
  out.best_measurement = measurement_from_unitary(best_u, tol);
  out.constraint_residual = constraint_residual(best_u, rho_a);
  return out;
}

GapReport gap_report(const states::BipartiteState& s, const OracleConfig& cfg,
                     const Tolerances& tol) {
  const bloch::BlochForm b = bloch::decompose(s);
  GapReport g;
  g.gd_lower = bounds::gd_lower_bound(b, tol);
  g.min_upper = bounds::min_upper_bound(b, tol);
  const OracleResult gd = oracle_gd(s, cfg, tol);
  const OracleResult mn = oracle_min(s, cfg, tol);
  g.oracle_gd = gd.best_value;
  g.oracle_min = mn.best_value;
  g.gd_gap = g.oracle_gd - g.gd_lower;
  g.min_gap = g.min_upper - g.oracle_min;
  g.min_constraint_residual = mn.constraint_residual.value_or(0.0);
  return g;
}

} // namespace qcorr::oracle
