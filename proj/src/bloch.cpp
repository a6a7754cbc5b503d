#include "qcorr/bloch.hpp"

#include <cmath>

namespace qcorr::bloch {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

GeneratorBasis gell_mann_basis(int d) {
  if (d < 2) throw BadParameter("generator basis needs d >= 2");
  GeneratorBasis basis;
  basis.d = d;
  basis.lambdas.reserve(std::size_t(d) * d - 1);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      MatrixXcd sym = MatrixXcd::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.lambdas.push_back(sym);
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      MatrixXcd anti = MatrixXcd::Zero(d, d);
      anti(j, k) = -kI;
      anti(k, j) = kI;
      basis.lambdas.push_back(anti);
    }
  }
  for (int l = 1; l < d; ++l) {
    MatrixXcd diag = MatrixXcd::Zero(d, d);
    const double norm = std::sqrt(2.0 / (double(l) * (l + 1)));
    for (int j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -norm * l;
    basis.lambdas.push_back(diag);
  }
  return basis;
}

BlochForm decompose(const states::BipartiteState& s) {
  const int m = s.m, n = s.n;
  const GeneratorBasis ga = gell_mann_basis(m);
  const GeneratorBasis gb = gell_mann_basis(n);
  const int da = m * m - 1, db = n * n - 1;

  BlochForm b;
  b.m = m;
  b.n = n;
  b.x.resize(da);
  b.y.resize(db);
  b.T.resize(da, db);

  // Work blockwise: rho = sum_{a,b} E_ab (x) B_ab with B_ab the n x n blocks.
  // Tr(rho (l_i (x) l_j)) = sum_{a,b} (l_i)_{ba} Tr(B_ab l_j).
  Eigen::MatrixXcd block_traces(m, m); // Tr(B_ab)
  for (int a = 0; a < m; ++a)
    for (int bb = 0; bb < m; ++bb)
      block_traces(a, bb) = s.rho.block(a * n, bb * n, n, n).trace();

  for (int i = 0; i < da; ++i) {
    std::complex<double> acc = 0.0;
    for (int a = 0; a < m; ++a)
      for (int bb = 0; bb < m; ++bb) acc += ga.lambdas[i](bb, a) * block_traces(a, bb);
    b.x(i) = 0.5 * m * acc.real();
  }

  MatrixXcd diag_sum = MatrixXcd::Zero(n, n);
  for (int a = 0; a < m; ++a) diag_sum += s.rho.block(a * n, a * n, n, n);
  for (int j = 0; j < db; ++j) {
    b.y(j) = 0.5 * n * (diag_sum * gb.lambdas[j]).trace().real();
  }

  // t_j(a,b) = Tr(B_ab l_j)
  std::vector<Eigen::MatrixXcd> tj(db, Eigen::MatrixXcd(m, m));
  for (int j = 0; j < db; ++j)
    for (int a = 0; a < m; ++a)
      for (int bb = 0; bb < m; ++bb)
        tj[j](a, bb) = (s.rho.block(a * n, bb * n, n, n) * gb.lambdas[j]).trace();
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < db; ++j) {
      std::complex<double> acc = 0.0;
      for (int a = 0; a < m; ++a)
        for (int bb = 0; bb < m; ++bb) acc += ga.lambdas[i](bb, a) * tj[j](a, bb);
      b.T(i, j) = 0.25 * m * n * acc.real();
    }
  }
  return b;
}

MatrixXcd reconstruct(const BlochForm& b) {
  const int m = b.m, n = b.n;
  const int da = m * m - 1, db = n * n - 1;
  if (b.x.size() != da || b.y.size() != db || b.T.rows() != da || b.T.cols() != db) {
    throw DimensionMismatch("Bloch form has inconsistent component sizes");
  }
  const GeneratorBasis ga = gell_mann_basis(m);
  const GeneratorBasis gb = gell_mann_basis(n);

  MatrixXcd yterm = MatrixXcd::Zero(n, n);
  for (int j = 0; j < db; ++j) yterm += b.y(j) * gb.lambdas[j];

  MatrixXcd rho(m * n, m * n);
  for (int a = 0; a < m; ++a) {
    for (int bb = 0; bb < m; ++bb) {
      std::complex<double> scal = (a == bb) ? 1.0 : 0.0;
      for (int i = 0; i < da; ++i) scal += b.x(i) * ga.lambdas[i](a, bb);
      MatrixXcd block = scal * MatrixXcd::Identity(n, n);
      if (a == bb) block += yterm;
      for (int j = 0; j < db; ++j) {
        std::complex<double> coef = 0.0;
        for (int i = 0; i < da; ++i) coef += b.T(i, j) * ga.lambdas[i](a, bb);
        block += coef * gb.lambdas[j];
      }
      rho.block(a * n, bb * n, n, n) = block / double(m * n);
    }
  }
  return rho;
}

CMatrix c_matrix(const BlochForm& b) {
  const int m = b.m, n = b.n;
  const int da = m * m - 1, db = n * n - 1;
  CMatrix c;
  c.entries.resize(m * m, n * n);
  const double scale = 1.0 / std::sqrt(double(m) * n);
  c.entries(0, 0) = scale;
  for (int j = 0; j < db; ++j) c.entries(0, 1 + j) = scale * std::sqrt(2.0 / n) * b.y(j);
  for (int i = 0; i < da; ++i) c.entries(1 + i, 0) = scale * std::sqrt(2.0 / m) * b.x(i);
  const double tscale = scale * 2.0 / std::sqrt(double(m) * n);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) c.entries(1 + i, 1 + j) = tscale * b.T(i, j);
  return c;
}

double purity(const BlochForm& b) {
  const double mn = double(b.m) * b.n;
  return (1.0 + (2.0 / b.m) * b.x.squaredNorm() + (2.0 / b.n) * b.y.squaredNorm() +
          (4.0 / mn) * b.T.squaredNorm()) /
         mn;
}

VectorXd operator_row(const MatrixXcd& h) {
  const int d = int(h.rows());
  VectorXd a(d * d - 1);
  int idx = 0;
  const double s2 = std::sqrt(2.0);
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) a(idx++) = s2 * h(p, q).real();
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) a(idx++) = -s2 * h(p, q).imag();
  double cum = 0.0;
  for (int l = 1; l < d; ++l) {
    cum += h(l - 1, l - 1).real();
    a(idx++) = (cum - l * h(l, l).real()) / std::sqrt(double(l) * (l + 1));
  }
  return a;
}

VectorXd projector_row(const VectorXcd& u) {
  const int d = int(u.size());
  VectorXd a(d * d - 1);
  int idx = 0;
  const double s2 = std::sqrt(2.0);
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) a(idx++) = s2 * (std::conj(u(p)) * u(q)).real();
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) a(idx++) = s2 * (std::conj(u(p)) * u(q)).imag();
  double cum = 0.0;
  for (int l = 1; l < d; ++l) {
    cum += std::norm(u(l - 1));
    a(idx++) = (cum - l * std::norm(u(l))) / std::sqrt(double(l) * (l + 1));
  }
  return a;
}

} // namespace qcorr::bloch
