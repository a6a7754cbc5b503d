// Test-only helpers, deliberately independent of the library internals they
// are used to check: naive index-loop contractions and Kronecker products.
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace testsupport {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cd = std::complex<double>;

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Partial trace over B by explicit index loops.
inline MatrixXcd naive_trace_out_b(const MatrixXcd& rho, int m, int n) {
  MatrixXcd out = MatrixXcd::Zero(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < n; ++c) out(a, b) += rho(a * n + c, b * n + c);
  return out;
}

inline MatrixXcd naive_trace_out_a(const MatrixXcd& rho, int m, int n) {
  MatrixXcd out = MatrixXcd::Zero(n, n);
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d)
      for (int a = 0; a < m; ++a) out(c, d) += rho(a * n + c, a * n + d);
  return out;
}

inline MatrixXcd pauli_x() {
  MatrixXcd s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

inline MatrixXcd pauli_y() {
  MatrixXcd s(2, 2);
  s << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);
  return s;
}

inline MatrixXcd pauli_z() {
  MatrixXcd s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

inline VectorXcd bell_phi_plus() {
  VectorXcd v = VectorXcd::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

} // namespace testsupport
