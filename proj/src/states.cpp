#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace qcorr::states {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

} // namespace

BipartiteState validate_state(const MatrixXcd& rho, int m, int n, const Tolerances& tol) {
  if (m < 2 || n < 2) {
    throw BadParameter("subsystem dimensions must be >= 2, got m=" + std::to_string(m) +
                       " n=" + std::to_string(n));
  }
  const int d = m * n;
  if (rho.rows() != d || rho.cols() != d) {
    throw DimensionMismatch("density matrix must be " + std::to_string(d) + "x" +
                            std::to_string(d) + " for m=" + std::to_string(m) +
                            " n=" + std::to_string(n) + ", got " + std::to_string(rho.rows()) +
                            "x" + std::to_string(rho.cols()));
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity) {
    throw NotHermitian("state is not Hermitian: max-abs(rho - rho†) = " + fmt(herm) +
                       " exceeds " + fmt(tol.hermiticity));
  }
  const double tr_dev = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  if (tr_dev > tol.unit_trace) {
    throw NotUnitTrace("state trace deviates from 1 by " + fmt(tr_dev) + ", tolerance " +
                       fmt(tol.unit_trace));
  }
  const Spectrum spec = hermitian_eig(rho, tol);
  const double min_eig = spec.eigenvalues(d - 1);
  if (min_eig < tol.psd_min_eig) {
    throw NotPSD("state is not positive semidefinite: min eigenvalue " + fmt(min_eig) +
                 " below " + fmt(tol.psd_min_eig));
  }
  return BipartiteState{m, n, rho};
}

BipartiteState pure_to_state(const VectorXcd& psi, int m, int n, const Tolerances& tol) {
  if (psi.size() != m * n) {
    throw DimensionMismatch("pure state vector must have length " + std::to_string(m * n));
  }
  const double norm_dev = std::abs(psi.squaredNorm() - 1.0);
  if (norm_dev > tol.pure_norm) {
    throw NotNormalized("pure state norm^2 deviates from 1 by " + fmt(norm_dev));
  }
  return BipartiteState{m, n, psi * psi.adjoint()};
}

MultiQubitPureState make_pure(int num_qubits, const VectorXcd& amplitudes, const Tolerances& tol) {
  if (num_qubits < 2) throw BadParameter("need at least 2 qubits");
  const Eigen::Index d = Eigen::Index(1) << num_qubits;
  if (amplitudes.size() != d) {
    throw DimensionMismatch("amplitude vector must have length 2^" + std::to_string(num_qubits));
  }
  const double norm_dev = std::abs(amplitudes.squaredNorm() - 1.0);
  if (norm_dev > tol.pure_norm) {
    throw NotNormalized("amplitude norm^2 deviates from 1 by " + fmt(norm_dev));
  }
  return MultiQubitPureState{num_qubits, amplitudes};
}

MatrixXcd partial_trace(const BipartiteState& s, Side keep) {
  const int m = s.m, n = s.n;
  if (keep == Side::A) {
    MatrixXcd out = MatrixXcd::Zero(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < n; ++c) out(a, b) += s.rho(a * n + c, b * n + c);
    return out;
  }
  MatrixXcd out = MatrixXcd::Zero(n, n);
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d)
      for (int a = 0; a < m; ++a) out(c, d) += s.rho(a * n + c, a * n + d);
  return out;
}

BipartiteState reduce_pure_to_pair(const MultiQubitPureState& s, int i, int k,
                                   const Tolerances& tol) {
  const int nq = s.num_qubits;
  if (i < 1 || i > nq || k < 1 || k > nq || i == k) {
    throw IndexOutOfRange("party indices must be distinct and in [1, " + std::to_string(nq) +
                          "], got (" + std::to_string(i) + ", " + std::to_string(k) + ")");
  }
  const int bi = nq - i; // bit position of party i (qubit 1 is the MSB)
  const int bk = nq - k;
  const std::size_t dim = std::size_t(1) << nq;

  // Group amplitudes by the state of the remaining qubits, then accumulate
  // the 4x4 outer products group by group.
  const std::size_t rest_dim = dim >> 2;
  std::vector<std::array<std::complex<double>, 4>> groups(rest_dim, {0.0, 0.0, 0.0, 0.0});
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const int vi = int((idx >> bi) & 1u);
    const int vk = int((idx >> bk) & 1u);
    // compact the remaining bits
    std::size_t r = 0;
    int pos = 0;
    for (int b = nq - 1; b >= 0; --b) {
      if (b == bi || b == bk) continue;
      r |= ((idx >> b) & 1u) << (nq - 3 - pos);
      ++pos;
    }
    groups[r][vi * 2 + vk] += s.amplitudes(Eigen::Index(idx));
  }
  MatrixXcd rho = MatrixXcd::Zero(4, 4);
  for (const auto& g : groups)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) rho(a, b) += g[a] * std::conj(g[b]);
  return validate_state(rho, 2, 2, tol);
}

Spectrum hermitian_eig(const MatrixXcd& a_in, const Tolerances& tol) {
  if (a_in.rows() != a_in.cols()) throw DimensionMismatch("eigensolver needs a square matrix");
  const int d = int(a_in.rows());
  const double herm = (a_in - a_in.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.eig_input_hermiticity) {
    throw NotHermitian("eigensolver input not Hermitian: residual " + fmt(herm));
  }

  MatrixXcd a = 0.5 * (a_in + a_in.adjoint());
  MatrixXcd v = MatrixXcd::Identity(d, d);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double threshold = tol.jacobi_threshold * scale;

  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const std::complex<double> apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= threshold) continue;
        rotated = true;

        // Complex Jacobi rotation: strip the phase of a_pq, then a real
        // rotation zeroing the off-diagonal of the 2x2 block.
        const std::complex<double> phase = apq / r; // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sr = t * c;
        const std::complex<double> s = sr * phase;       // J(p,q) entry
        const std::complex<double> sc = std::conj(s);

        // A <- J† A J with J = I except J(pp)=c, J(pq)=s, J(qp)=-conj(s), J(qq)=c
        for (int j = 0; j < d; ++j) { // column update: A <- A J
          const std::complex<double> ajp = a(j, p), ajq = a(j, q);
          a(j, p) = c * ajp - sc * ajq;
          a(j, q) = s * ajp + c * ajq;
        }
        for (int j = 0; j < d; ++j) { // row update: A <- J† A
          const std::complex<double> apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = sc * apj + c * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int j = 0; j < d; ++j) { // V <- V J
          const std::complex<double> vjp = v(j, p), vjq = v(j, q);
          v(j, p) = c * vjp - sc * vjq;
          v(j, q) = s * vjp + c * vjq;
        }
      }
    }
    if (!rotated) break;
  }

  // Sort non-increasing; stable so degenerate subspaces keep solver order.
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  VectorXd diag(d);
  for (int j = 0; j < d; ++j) diag(j) = a(j, j).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](int lhs, int rhs) { return diag(lhs) > diag(rhs); });

  Spectrum out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  for (int j = 0; j < d; ++j) {
    out.eigenvalues(j) = diag(order[j]);
    VectorXcd col = v.col(order[j]);
    // phase convention: first component of largest absolute value made real-positive
    int imax = 0;
    double best = -1.0;
    for (int r2 = 0; r2 < d; ++r2) {
      const double mag = std::abs(col(r2));
      if (mag > best + 1e-15) {
        best = mag;
        imax = r2;
      }
    }
    if (best > 0.0) col *= std::conj(col(imax)) / best;
    out.eigenvectors.col(j) = col;
  }
  return out;
}

BipartiteState make_werner(int m, double z, const Tolerances& tol) {
  if (m < 2) throw BadParameter("Werner state needs m >= 2");
  if (z < -1.0 || z > 1.0) {
    throw BadParameter("Werner parameter z must be in [-1, 1], got " + std::to_string(z));
  }
  const int d = m * m;
  const double denom = double(m) * m * m - m;
  const double ai = (m - z) / denom;
  const double bf = (m * z - 1.0) / denom;
  MatrixXcd rho = ai * MatrixXcd::Identity(d, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) rho(i * m + j, j * m + i) += bf; // swap operator term
  return validate_state(rho, m, m, tol);
}

BipartiteState make_isotropic(int m, double z, const Tolerances& tol) {
  if (m < 2) throw BadParameter("isotropic state needs m >= 2");
  if (z < 0.0 || z > 1.0) {
    throw BadParameter("isotropic parameter z must be in [0, 1], got " + std::to_string(z));
  }
  const int d = m * m;
  const double denom = double(d) - 1.0;
  const double ai = (1.0 - z) / denom;
  const double bp = (double(d) * z - 1.0) / denom;
  MatrixXcd rho = ai * MatrixXcd::Identity(d, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) rho(i * m + i, j * m + j) += bp / m; // |Psi><Psi| term
  return validate_state(rho, m, m, tol);
}

BipartiteState random_state(int m, int n, int rank, Rng& rng, const Tolerances& tol) {
  const int d = m * n;
  if (rank < 1 || rank > d) {
    throw BadParameter("rank must be in [1, " + std::to_string(d) + "], got " +
                       std::to_string(rank));
  }
  MatrixXcd g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_gaussian();
  MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return validate_state(rho, m, n, tol);
}

BipartiteState random_state(int m, int n, int rank, std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed);
  return random_state(m, n, rank, rng, tol);
}

VectorXcd random_pure(int dim, Rng& rng) {
  VectorXcd psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = rng.complex_gaussian();
  psi.normalize();
  return psi;
}

VectorXcd random_pure(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(dim, rng);
}

MatrixXcd random_unitary(int dim, Rng& rng) {
  MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ();
  MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0) q.col(j) *= rjj / mag;
  }
  return q;
}

} // namespace qcorr::states
