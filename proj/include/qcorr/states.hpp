#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qcorr/errors.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr::states {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Validated bipartite density matrix on C^m (x) C^n.
// Index convention: |i>_A (x) |j>_B maps to row i*n + j.
struct BipartiteState {
  int m = 0;
  int n = 0;
  MatrixXcd rho;
  int dim() const { return m * n; }
};

// N-qubit pure state, amplitudes indexed by bitstrings with qubit 1 as the
// most significant bit: |q1 q2 ... qN> -> sum_j qj * 2^(N-j).
struct MultiQubitPureState {
  int num_qubits = 0;
  VectorXcd amplitudes;
};

// Eigendecomposition of a Hermitian matrix, eigenvalues non-increasing,
// eigenvector columns orthonormal and aligned with the eigenvalues.
struct Spectrum {
  VectorXd eigenvalues;
  MatrixXcd eigenvectors;
};

enum class Side { A, B };

// Checks Hermiticity, unit trace and positive semidefiniteness; throws
// DimensionMismatch / NotHermitian / NotUnitTrace / NotPSD with the measured
// residual in the message.
BipartiteState validate_state(const MatrixXcd& rho, int m, int n,
                              const Tolerances& tol = default_tolerances());

// |psi><psi| as a validated state.
BipartiteState pure_to_state(const VectorXcd& psi, int m, int n,
                             const Tolerances& tol = default_tolerances());

MultiQubitPureState make_pure(int num_qubits, const VectorXcd& amplitudes,
                              const Tolerances& tol = default_tolerances());

// Reduced density matrix of the kept subsystem (m x m for A, n x n for B).
MatrixXcd partial_trace(const BipartiteState& s, Side keep);

// Two-qubit reduced density matrix of parties (i, k), 1-indexed; party i
// becomes side A of the result.
BipartiteState reduce_pure_to_pair(const MultiQubitPureState& s, int i, int k,
                                   const Tolerances& tol = default_tolerances());

// Full eigendecomposition by cyclic Jacobi with complex rotations.
// Adequate for the dense matrices this library handles (dimension <= ~64).
Spectrum hermitian_eig(const MatrixXcd& a, const Tolerances& tol = default_tolerances());

// rho = (m-z)/(m^3-m) I + (mz-1)/(m^3-m) F, with F the swap operator; z in [-1, 1].
BipartiteState make_werner(int m, double z, const Tolerances& tol = default_tolerances());

// rho = (1-z)/(m^2-1) I + (m^2 z - 1)/(m^2-1) |Psi><Psi|, |Psi> maximally
// entangled; z in [0, 1].
BipartiteState make_isotropic(int m, double z, const Tolerances& tol = default_tolerances());

// Normalized G G† with G a seeded complex-Gaussian (mn) x rank matrix.
BipartiteState random_state(int m, int n, int rank, std::uint64_t seed,
                            const Tolerances& tol = default_tolerances());
BipartiteState random_state(int m, int n, int rank, Rng& rng,
                            const Tolerances& tol = default_tolerances());

// Haar-distributed unit vector (normalized complex Gaussian).
VectorXcd random_pure(int dim, std::uint64_t seed);
VectorXcd random_pure(int dim, Rng& rng);

// Haar-distributed unitary via QR of a Ginibre matrix with phase fixing.
MatrixXcd random_unitary(int dim, Rng& rng);

} // namespace qcorr::states
