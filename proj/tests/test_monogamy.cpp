#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcorr/monogamy.hpp"

#include <cmath>

#include "qcorr/bloch.hpp"
#include "qcorr/bounds.hpp"
#include "support.hpp"

using namespace qcorr;
using namespace qcorr::monogamy;
using qcorr::states::MultiQubitPureState;

namespace {

Eigen::VectorXd random_unit(Rng& rng, int n) {
  Eigen::VectorXd c(n);
  for (int i = 0; i < n; ++i) c(i) = rng.gaussian();
  c.normalize();
  return c;
}

} // namespace

TEST_CASE("family constructors") {
  const double r = 1.0 / std::sqrt(2.0);
  const MultiQubitPureState ghz = make_gghz(r, r, 3);
  CHECK(std::abs(ghz.amplitudes(0) - r) < 1e-15);
  CHECK(std::abs(ghz.amplitudes(7) - r) < 1e-15);
  CHECK(std::abs(ghz.amplitudes.squaredNorm() - 1.0) < 1e-14);

  const double c = 1.0 / std::sqrt(3.0);
  const MultiQubitPureState w = make_gw(Eigen::Vector3d(c, c, c), 3);
  CHECK(std::abs(w.amplitudes(4) - c) < 1e-15); // |100>
  CHECK(std::abs(w.amplitudes(2) - c) < 1e-15); // |010>
  CHECK(std::abs(w.amplitudes(1) - c) < 1e-15); // |001>

  const MultiQubitPureState ce = make_counterexample(0.5, 4);
  int nonzero = 0;
  for (int i = 0; i < ce.amplitudes.size(); ++i) {
    if (std::abs(ce.amplitudes(i)) > 0) ++nonzero;
  }
  CHECK(nonzero == 3);
  CHECK(std::abs(ce.amplitudes.squaredNorm() - 1.0) < 1e-14);

  CHECK_THROWS_AS(make_gghz(0.9, 0.9, 3), NotNormalized);
  CHECK_THROWS_AS(make_gghz(r, r, 2), BadParameter);
  CHECK_THROWS_AS(make_counterexample(1.5, 4), BadParameter);
  CHECK_THROWS_AS(make_gw(Eigen::Vector3d(c, c, c), 4), BadParameter);
}

TEST_CASE("cut_discord closed values") {
  const MultiQubitPureState ghz = make_gghz(0.6, 0.8, 4);
  CHECK(cut_discord(ghz) == doctest::Approx(2.0 * 0.36 * 0.64).epsilon(1e-12));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(cut_discord(make_gghz(r, r, 3)) == doctest::Approx(0.5).epsilon(1e-12));

  const double c = 1.0 / std::sqrt(3.0);
  CHECK(cut_discord(make_gw(Eigen::Vector3d(c, c, c), 3)) ==
        doctest::Approx(4.0 / 9).epsilon(1e-12));

  for (double p : {0.1, 0.3, 0.5, 0.9}) {
    CHECK(cut_discord(make_counterexample(p, 4)) ==
          doctest::Approx(p * (1.0 - p)).epsilon(1e-12));
  }
}

TEST_CASE("pair_discord closed values") {
  const double c = 1.0 / std::sqrt(3.0);
  const MultiQubitPureState w3 = make_gw(Eigen::Vector3d(c, c, c), 3);
  CHECK(pair_discord(w3, 2) == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(pair_discord(w3, 3) == doctest::Approx(1.0 / 6).epsilon(1e-12));

  const MultiQubitPureState ghz = make_gghz(0.6, 0.8, 4);
  for (int k = 2; k <= 4; ++k) CHECK(std::abs(pair_discord(ghz, k)) < 1e-12);

  for (double p : {0.2, 0.5, 0.8}) {
    const MultiQubitPureState ce = make_counterexample(p, 4);
    const double expect = 0.5 * std::min(p * p, (1.0 - p) * (1.0 - p));
    for (int k = 2; k <= 4; ++k) {
      CHECK(pair_discord(ce, k) == doctest::Approx(expect).epsilon(1e-11));
    }
  }
}

TEST_CASE("closed-form helpers") {
  const double c3 = 1.0 / std::sqrt(3.0);
  CHECK(w_pair_discord_closed_form(c3, c3) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(w_pair_discord_closed_form(0.5, 0.5) == doctest::Approx(1.0 / 8).epsilon(1e-14));

  // c0 = 0 reduces to the diagonal W case
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd c = random_unit(rng, 4).cwiseAbs();
    const double c1 = c(0), ck = c(1);
    const auto lam = slocc_w_spectrum(0.0, c1, ck);
    const double s = 4.0 * c1 * c1 * ck * ck;
    const double u = 1.0 - 2.0 * c1 * c1;
    const double w = 1.0 - 2.0 * c1 * c1 - 2.0 * ck * ck;
    // spectrum {s, s, u^2 + w^2} in some order
    std::array<double, 3> got = lam;
    std::sort(got.begin(), got.end());
    std::array<double, 3> expect{s, s, u * u + w * w};
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-11));
  }
}

TEST_CASE("monogamy_report pinned families") {
  // equal-coefficient W, N = 4: equality
  Eigen::VectorXd c4 = Eigen::VectorXd::Constant(4, 0.5);
  const MonogamyReport r4 = monogamy_report(make_gw(c4, 4));
  CHECK(r4.lhs_sum == doctest::Approx(3.0 / 8).epsilon(1e-12));
  CHECK(r4.cut_discord == doctest::Approx(3.0 / 8).epsilon(1e-12));
  CHECK(std::abs(r4.deficit) < 1e-10);
  CHECK(r4.satisfied);

  // equal-coefficient W, N = 3: strict inequality with deficit 1/9
  const double c = 1.0 / std::sqrt(3.0);
  const MonogamyReport r3 = monogamy_report(make_gw(Eigen::Vector3d(c, c, c), 3));
  CHECK(r3.lhs_sum == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(r3.cut_discord == doctest::Approx(4.0 / 9).epsilon(1e-12));
  CHECK(r3.deficit == doctest::Approx(1.0 / 9).epsilon(1e-10));
  CHECK(r3.satisfied);

  // equal-coefficient W, N = 5: equality again
  Eigen::VectorXd c5 = Eigen::VectorXd::Constant(5, 1.0 / std::sqrt(5.0));
  const MonogamyReport r5 = monogamy_report(make_gw(c5, 5));
  CHECK(std::abs(r5.deficit) < 1e-10);

  // counterexample at p = 1/2, N = 4: violated
  const MonogamyReport rc = monogamy_report(make_counterexample(0.5, 4));
  CHECK(rc.lhs_sum == doctest::Approx(3.0 / 8).epsilon(1e-12));
  CHECK(rc.cut_discord == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rc.deficit == doctest::Approx(-0.125).epsilon(1e-12));
  CHECK_FALSE(rc.satisfied);

  // GGHZ: classical pair marginals, always satisfied
  const MonogamyReport rg = monogamy_report(make_gghz(0.6, 0.8, 5));
  CHECK(rg.lhs_sum < 1e-12);
  CHECK(rg.cut_discord == doctest::Approx(2.0 * 0.36 * 0.64).epsilon(1e-12));
  CHECK(rg.satisfied);
}

TEST_CASE("pipeline matches closed forms on random W and W-class states") {
  Rng rng(29);
  for (int nq = 3; nq <= 5; ++nq) {
    for (int trial = 0; trial < 30; ++trial) {
      const Eigen::VectorXd c = random_unit(rng, nq);
      const MultiQubitPureState w = make_gw(c, nq);
      for (int k = 2; k <= nq; ++k) {
        const double expect = w_pair_discord_closed_form(c(0), c(k - 1));
        CHECK(pair_discord(w, k) == doctest::Approx(expect).epsilon(1e-10));
        CHECK(pair_discord(w, k) <= 2.0 * c(0) * c(0) * c(k - 1) * c(k - 1) + 1e-12);
      }

      const Eigen::VectorXd full = random_unit(rng, nq + 1);
      const double c0 = full(0);
      const Eigen::VectorXd cw = full.tail(nq);
      const MultiQubitPureState sw = make_slocc_w(c0, cw, nq);
      for (int k = 2; k <= nq; ++k) {
        const double expect = slocc_w_pair_discord_closed_form(c0, cw(0), cw(k - 1));
        CHECK(pair_discord(sw, k) == doctest::Approx(expect).epsilon(1e-10));
        CHECK(pair_discord(sw, k) <= 2.0 * cw(0) * cw(0) * cw(k - 1) * cw(k - 1) + 1e-12);
      }
      CHECK(monogamy_report(sw).deficit >= -1e-9);
      CHECK(monogamy_report(w).deficit >= -1e-9);
    }
  }
}

TEST_CASE("spectrum discriminant identity b >= (c - a)^2") {
  Rng rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd full = random_unit(rng, 5);
    const double c0 = full(0), c1 = full(1), ck = full(2);
    const double c0s = c0 * c0, c1s = c1 * c1, cks = ck * ck;
    const double u = 1.0 - 2.0 * c1s;
    const double w = 1.0 - 2.0 * c1s - 2.0 * cks;
    const double norm_sum = 8.0 * c1s * cks + 8.0 * c0s * c1s + u * u + 4.0 * c0s * cks + w * w;
    const double cc = norm_sum - 8.0 * c1s * cks;
    const double a = u * u - 2.0 * cks * (1.0 - c0s - cks - c1s) + 4.0 * c1s * (c0s + cks);
    const auto lam = slocc_w_spectrum(c0, c1, ck);
    const double b = 0.25 * (lam[1] - lam[2]) * (lam[1] - lam[2]);
    CHECK(b >= (cc - a) * (cc - a) - 1e-12);
  }
}

TEST_CASE("counterexample violation interval on a 1001-point grid") {
  for (int nq : {4, 5}) {
    const double lo = 2.0 / (nq + 1);
    const double hi = double(nq - 1) / (nq + 1);
    for (int i = 0; i <= 1000; ++i) {
      const double p = double(i) / 1000.0;
      const MonogamyReport rep = monogamy_report(make_counterexample(p, nq));
      const double lhs = 0.5 * (nq - 1) * std::min(p * p, (1.0 - p) * (1.0 - p));
      const double rhs = p * (1.0 - p);
      const bool closed_form_satisfied = lhs <= rhs + 1e-12;
      CHECK(rep.satisfied == closed_form_satisfied);
      const bool inside_open_interval = p > lo + 1e-12 && p < hi - 1e-12;
      CHECK(rep.satisfied == !inside_open_interval);
    }
  }
}

TEST_CASE("anchor permutation re-anchors the report") {
  // GW is symmetric in the non-anchor parties; anchoring at qubit 2 swaps the
  // roles of c_1 and c_2
  const Eigen::VectorXd c = (Eigen::VectorXd(3) << 0.8, 0.36, 0.48).finished();
  const MultiQubitPureState w = make_gw(c, 3);
  CHECK(pair_discord(w, 1, 2) == doctest::Approx(w_pair_discord_closed_form(c(1), c(0))));
  CHECK(pair_discord(w, 3, 2) == doctest::Approx(w_pair_discord_closed_form(c(1), c(2))));
  const MonogamyReport rep = monogamy_report(w, 2);
  CHECK(rep.cut_discord == doctest::Approx(2.0 * c(1) * c(1) * (1.0 - c(1) * c(1))));
}

TEST_CASE("schmidt-decomposable states satisfy monogamy with zero lhs") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = rng.uniform();
    const double amp0 = std::sqrt(a);
    const double amp1 = std::sqrt(1.0 - a);
    for (int nq = 3; nq <= 5; ++nq) {
      const MonogamyReport rep = monogamy_report(make_gghz(amp0, amp1, nq));
      CHECK(rep.lhs_sum < 1e-12);
      CHECK(rep.satisfied);
    }
  }
}
