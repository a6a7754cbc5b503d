#pragma once

#include <vector>

#include "qcorr/states.hpp"

namespace qcorr::bloch {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Generalized Gell-Mann generators of SU(d), normalized Tr(l_i l_j) = 2 d_ij.
// Fixed ordering: symmetric off-diagonal pairs (j,k), j<k, lexicographic;
// then the antisymmetric pairs in the same order; then the d-1 diagonal
// generators in increasing rank.
struct GeneratorBasis {
  int d = 0;
  std::vector<MatrixXcd> lambdas;
};

// Bloch form of a bipartite state: local vectors x (length m^2-1),
// y (length n^2-1) and correlation matrix T ((m^2-1) x (n^2-1)).
struct BlochForm {
  int m = 0;
  int n = 0;
  VectorXd x;
  VectorXd y;
  MatrixXd T;
};

// Coefficient matrix of the expansion in the orthonormal operator basis
// {I/sqrt(d), lambda_i/sqrt(2)}; satisfies Tr(C C^t) = Tr(rho^2).
struct CMatrix {
  MatrixXd entries; // m^2 x n^2
};

GeneratorBasis gell_mann_basis(int d);

BlochForm decompose(const states::BipartiteState& s);

// Inverse of decompose; the result need not be PSD for arbitrary (x, y, T).
MatrixXcd reconstruct(const BlochForm& b);

CMatrix c_matrix(const BlochForm& b);

// Tr(rho^2) predicted by the Bloch form.
double purity(const BlochForm& b);

// Row of coefficients a_i = Tr(H lambda_i)/sqrt(2) in the fixed generator
// ordering, for a Hermitian H.
VectorXd operator_row(const MatrixXcd& h);

// Same row for the rank-1 projector |u><u|, computed entrywise (no matrices).
VectorXd projector_row(const VectorXcd& u);

} // namespace qcorr::bloch
