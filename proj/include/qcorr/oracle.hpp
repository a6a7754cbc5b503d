#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcorr/bounds.hpp"

namespace qcorr::oracle {

using Eigen::MatrixXcd;

struct OracleConfig {
  int restarts = 64;
  int iterations = 400;        // per restart
  double initial_step = 0.3;   // radians
  double step_decay = 0.97;
  std::uint64_t seed = 0;
  double constraint_tolerance = 1e-8;
};

struct OracleResult {
  double best_value = 0.0;
  bounds::MeasurementCandidate best_measurement;
  std::vector<double> per_restart_values;
  std::optional<double> constraint_residual; // MIN mode only
};

struct GapReport {
  double gd_lower = 0.0;
  double oracle_gd = 0.0;
  double min_upper = 0.0;
  double oracle_min = 0.0;
  double gd_gap = 0.0;  // oracle_gd - gd_lower
  double min_gap = 0.0; // min_upper - oracle_min
  double min_constraint_residual = 0.0;
};

// Rank-1 von Neumann measurement from the columns of a unitary.
bounds::MeasurementCandidate measurement_from_unitary(const MatrixXcd& u,
                                                      const Tolerances& tol = default_tolerances());

// Stochastic minimization of the measurement disturbance over unitaries:
// Haar-random restarts, hill-climbing with random two-level rotations of
// decaying angle. best_value upper-bounds the true GD.
OracleResult oracle_gd(const states::BipartiteState& s, const OracleConfig& cfg = {},
                       const Tolerances& tol = default_tolerances());

// Maximization over the measurements that leave rho_A invariant. With a
// nondegenerate rho_A the feasible set collapses to its eigenbasis and the
// value is deterministic; otherwise the search runs over block unitaries on
// the degenerate eigenspaces.
OracleResult oracle_min(const states::BipartiteState& s, const OracleConfig& cfg = {},
                        const Tolerances& tol = default_tolerances());

GapReport gap_report(const states::BipartiteState& s, const OracleConfig& cfg = {},
                     const Tolerances& tol = default_tolerances());

} // namespace qcorr::oracle
