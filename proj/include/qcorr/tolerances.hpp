#pragma once

namespace qcorr {

// Every numerical threshold used by the library, collected in one record so
// there is a single tuning point.
struct Tolerances {
  // density-matrix validation
  double hermiticity = 1e-10;  // max-abs(rho - rho†)
  double unit_trace = 1e-10;   // |Tr(rho) - 1|
  double psd_min_eig = -1e-10; // smallest admissible eigenvalue
  double pure_norm = 1e-12;    // | ||psi||^2 - 1 |

  // Hermitian eigensolver (cyclic Jacobi)
  double eig_input_hermiticity = 1e-8;
  double eig_residual = 1e-9;      // ||A - V L V†|| / (1 + ||A||)
  double jacobi_threshold = 1e-13; // off-diagonal sweep threshold (relative)
  int jacobi_max_sweeps = 100;

  // measurement candidates
  double measurement_trace = 1e-10;     // |Tr(op) - 1| and completeness
  double measurement_psd = -1e-9;       // min eigenvalue of a candidate operator
  double measurement_idempotent = 1e-8; // ||P^2 - P||_F
  double value_identity = 1e-9;         // direct vs C-matrix value agreement
  double unitarity = 1e-9;              // max-abs(U†U - I)

  // oracle
  double degeneracy_gap = 1e-8;  // eigenvalue clustering for rho_A
  double min_constraint = 1e-8;  // ||sum_k P_k rho_A P_k - rho_A||_F

  // bounds / monogamy
  double bound_clamp = 1e-12;      // largest negative value silently clamped to 0
  double coincidence = 1e-10;      // x = 0 and equal-spectrum tests for D = N
  double deficit_slack = -1e-9;    // monogamy "satisfied" threshold
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

} // namespace qcorr
