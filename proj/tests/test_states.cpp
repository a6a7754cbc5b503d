#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcorr/states.hpp"
#include "support.hpp"

using namespace qcorr;
using namespace qcorr::states;
using testsupport::kron;

TEST_CASE("validate_state accepts simple valid states") {
  const MatrixXcd eye4 = MatrixXcd::Identity(4, 4);
  CHECK_NOTHROW(validate_state(eye4 / 4.0, 2, 2));

  MatrixXcd pure = MatrixXcd::Zero(4, 4);
  pure(0, 0) = 1.0;
  CHECK_NOTHROW(validate_state(pure, 2, 2));
}

TEST_CASE("validate_state rejects each violated invariant by name") {
  MatrixXcd bad = MatrixXcd::Zero(4, 4);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(validate_state(bad, 2, 2), NotPSD);

  MatrixXcd wrong_dim = MatrixXcd::Identity(3, 3) / 3.0;
  CHECK_THROWS_AS(validate_state(wrong_dim, 2, 2), DimensionMismatch);

  MatrixXcd nonherm = MatrixXcd::Identity(4, 4) / 4.0;
  nonherm(0, 1) = std::complex<double>(0.0, 0.3);
  CHECK_THROWS_AS(validate_state(nonherm, 2, 2), NotHermitian);

  CHECK_THROWS_AS(validate_state(MatrixXcd::Identity(4, 4), 2, 2), NotUnitTrace);

  try {
    validate_state(bad, 2, 2);
  } catch (const NotPSD& e) {
    CHECK(std::string(e.what()).find("-5.0") != std::string::npos);
  }
}

TEST_CASE("partial_trace marginals") {
  const VectorXcd bell = testsupport::bell_phi_plus();
  const BipartiteState s = pure_to_state(bell, 2, 2);
  const MatrixXcd ra = partial_trace(s, Side::A);
  CHECK((ra - MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-14);

  MatrixXcd pure = MatrixXcd::Zero(4, 4);
  pure(0, 0) = 1.0;
  const BipartiteState p = validate_state(pure, 2, 2);
  MatrixXcd expect = MatrixXcd::Zero(2, 2);
  expect(0, 0) = 1.0;
  CHECK((partial_trace(p, Side::A) - expect).cwiseAbs().maxCoeff() < 1e-14);

  // independent oracle: naive index-loop contraction
  Rng rng(11);
  const BipartiteState r = random_state(3, 2, 6, rng);
  CHECK((partial_trace(r, Side::A) - testsupport::naive_trace_out_b(r.rho, 3, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-14);
  CHECK((partial_trace(r, Side::B) - testsupport::naive_trace_out_a(r.rho, 3, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-14);
}

TEST_CASE("equal-coefficient W3 marginal is diag(2/3, 1/3)") {
  // oracle: direct contraction of the 8-amplitude vector
  VectorXcd w3 = VectorXcd::Zero(8);
  const double c = 1.0 / std::sqrt(3.0);
  w3(4) = c; // |100>
  w3(2) = c; // |010>
  w3(1) = c; // |001>
  MatrixXcd rho1 = MatrixXcd::Zero(2, 2);
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      for (int rest = 0; rest < 4; ++rest) {
        rho1(b, bp) += w3(b * 4 + rest) * std::conj(w3(bp * 4 + rest));
      }
  CHECK(rho1(0, 0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(rho1(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const BipartiteState s = pure_to_state(w3, 2, 4);
  const MatrixXcd marg = partial_trace(s, Side::A);
  CHECK((marg - rho1).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace properties on random states") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + rng.uniform_int(2);
    const int n = 2 + rng.uniform_int(2);
    const BipartiteState s = random_state(m, n, 1 + rng.uniform_int(m * n), rng);
    CHECK(std::abs(partial_trace(s, Side::A).trace().real() - 1.0) < 1e-12);
    CHECK(std::abs(partial_trace(s, Side::B).trace().real() - 1.0) < 1e-12);
  }

  // product state: tracing out B returns rho_A
  Rng rng2(13);
  const BipartiteState a = random_state(2, 2, 2, rng2); // use as 4x4 density matrix of A
  const BipartiteState b = random_state(2, 2, 3, rng2);
  const MatrixXcd prod = kron(a.rho, b.rho);
  const BipartiteState s = validate_state(prod, 4, 4);
  CHECK((partial_trace(s, Side::A) - a.rho).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((partial_trace(s, Side::B) - b.rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("hermitian_eig on fixed matrices") {
  const Spectrum id3 = hermitian_eig(MatrixXcd::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(id3.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-14));

  MatrixXcd d(3, 3);
  d.setZero();
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const Spectrum sd = hermitian_eig(d);
  CHECK(sd.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(sd.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(sd.eigenvalues(2) == doctest::Approx(1.0));
  CHECK(std::abs(sd.eigenvectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(sd.eigenvectors(2, 1)) == doctest::Approx(1.0));

  const Spectrum sx = hermitian_eig(testsupport::pauli_x());
  CHECK(sx.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(sx.eigenvalues(1) == doctest::Approx(-1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(sx.eigenvectors(0, 0).real() == doctest::Approx(r));
  CHECK(sx.eigenvectors(1, 0).real() == doctest::Approx(r));
  CHECK(sx.eigenvectors(0, 1).real() == doctest::Approx(r));
  CHECK(sx.eigenvectors(1, 1).real() == doctest::Approx(-r));
}

TEST_CASE("hermitian_eig properties on random Hermitian matrices") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + rng.uniform_int(8);
    MatrixXcd a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = rng.complex_gaussian();
    a = (a + a.adjoint()).eval();
    const Spectrum s = hermitian_eig(a);

    CHECK(std::abs(s.eigenvalues.sum() - a.trace().real()) < 1e-9);
    CHECK((s.eigenvectors.adjoint() * s.eigenvectors - MatrixXcd::Identity(d, d))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    const MatrixXcd recon =
        s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
    CHECK((recon - a).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + a.norm()));
    for (int k = 0; k < d; ++k) {
      CHECK((a * s.eigenvectors.col(k) - s.eigenvalues(k) * s.eigenvectors.col(k))
                .cwiseAbs()
                .maxCoeff() < 1e-9 * (1.0 + a.norm()));
    }
    for (int k = 1; k < d; ++k) CHECK(s.eigenvalues(k - 1) >= s.eigenvalues(k));
  }
  CHECK_THROWS_AS(hermitian_eig(testsupport::pauli_x() +
                                MatrixXcd::Constant(2, 2, std::complex<double>(0, 1e-3))),
                  NotHermitian);
}

TEST_CASE("werner and isotropic families") {
  // mz - 1 = 0 gives the maximally mixed state
  const BipartiteState w = make_werner(2, 0.5);
  CHECK((w.rho - MatrixXcd::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-14);

  const BipartiteState iso = make_isotropic(2, 1.0);
  const VectorXcd bell = testsupport::bell_phi_plus();
  CHECK((iso.rho - bell * bell.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

  const BipartiteState iso2 = make_isotropic(3, 1.0 / 9.0);
  CHECK((iso2.rho - MatrixXcd::Identity(9, 9) / 9.0).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(make_werner(2, 1.2), BadParameter);
  CHECK_THROWS_AS(make_isotropic(2, -0.1), BadParameter);
  CHECK_THROWS_AS(make_werner(1, 0.0), BadParameter);

  // validity across a 21-point z grid for m in {2,3,4,5}
  for (int m = 2; m <= 5; ++m) {
    for (int i = 0; i <= 20; ++i) {
      const double zw = -1.0 + 2.0 * i / 20.0;
      CHECK_NOTHROW(make_werner(m, zw));
      const double zi = double(i) / 20.0;
      CHECK_NOTHROW(make_isotropic(m, zi));
    }
  }
}

TEST_CASE("random state generation") {
  const BipartiteState a = random_state(2, 2, 4, std::uint64_t(7));
  const BipartiteState b = random_state(2, 2, 4, std::uint64_t(7));
  CHECK((a.rho - b.rho).cwiseAbs().maxCoeff() == 0.0); // determinism

  const BipartiteState p = random_state(2, 3, 1, std::uint64_t(1));
  CHECK(std::abs((p.rho * p.rho).trace().real() - 1.0) < 1e-12); // rank 1 is pure

  CHECK_NOTHROW(random_state(3, 3, 9, std::uint64_t(2)));
  CHECK_THROWS_AS(random_state(2, 2, 0, std::uint64_t(3)), BadParameter);
  CHECK_THROWS_AS(random_state(2, 2, 5, std::uint64_t(3)), BadParameter);

  Rng rng(5);
  const MatrixXcd u = random_unitary(4, rng);
  CHECK((u.adjoint() * u - MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  const VectorXcd psi = random_pure(6, std::uint64_t(9));
  CHECK(std::abs(psi.squaredNorm() - 1.0) < 1e-14);
}

TEST_CASE("reduce_pure_to_pair") {
  // |00>: the (1,2) pair state is |00><00|
  VectorXcd v00 = VectorXcd::Zero(4);
  v00(0) = 1.0;
  const MultiQubitPureState two = make_pure(2, v00);
  // need N >= 3 for a nontrivial rest; embed |000>
  VectorXcd v000 = VectorXcd::Zero(8);
  v000(0) = 1.0;
  const MultiQubitPureState three = make_pure(3, v000);
  const BipartiteState r12 = reduce_pure_to_pair(three, 1, 2);
  MatrixXcd expect = MatrixXcd::Zero(4, 4);
  expect(0, 0) = 1.0;
  CHECK((r12.rho - expect).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(reduce_pure_to_pair(three, 1, 4), IndexOutOfRange);
  CHECK_THROWS_AS(reduce_pure_to_pair(three, 2, 2), IndexOutOfRange);
  (void)two;
}

TEST_CASE("GGHZ pair reduction is classical-diagonal") {
  // oracle: direct contraction of a|000>+b|111>
  const double a = 0.6, b = 0.8;
  VectorXcd amp = VectorXcd::Zero(8);
  amp(0) = a;
  amp(7) = b;
  const MultiQubitPureState s = make_pure(3, amp);
  for (int k = 2; k <= 3; ++k) {
    const BipartiteState rdm = reduce_pure_to_pair(s, 1, k);
    MatrixXcd expect = MatrixXcd::Zero(4, 4);
    expect(0, 0) = a * a;
    expect(3, 3) = b * b;
    CHECK((rdm.rho - expect).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("GW pair reduction matches the closed 4x4 form") {
  Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const int nq = 3 + trial % 3;
    Eigen::VectorXd c(nq);
    for (int i = 0; i < nq; ++i) c(i) = rng.gaussian();
    c.normalize();
    VectorXcd amp = VectorXcd::Zero(Eigen::Index(1) << nq);
    for (int k = 1; k <= nq; ++k) amp(Eigen::Index(1) << (nq - k)) = c(k - 1);
    const MultiQubitPureState s = make_pure(nq, amp);
    for (int k = 2; k <= nq; ++k) {
      const BipartiteState rdm = reduce_pure_to_pair(s, 1, k);
      const double c1 = c(0), ck = c(k - 1);
      MatrixXcd expect = MatrixXcd::Zero(4, 4);
      expect(0, 0) = 1.0 - c1 * c1 - ck * ck;
      expect(1, 1) = ck * ck;
      expect(2, 2) = c1 * c1;
      expect(1, 2) = c1 * ck;
      expect(2, 1) = c1 * ck;
      CHECK((rdm.rho - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}
