#include "qcorr/monogamy.hpp"

#include <algorithm>
#include <cmath>

#include "qcorr/bloch.hpp"
#include "qcorr/bounds.hpp"

namespace qcorr::monogamy {

namespace {

using Eigen::VectorXcd;

void check_num_qubits(int num_qubits) {
  if (num_qubits < 3) throw BadParameter("monogamy families need at least 3 qubits");
}

// amplitude index of |0..1_k..0>, qubit 1 being the most significant bit
Eigen::Index excitation_index(int k, int num_qubits) {
  return Eigen::Index(1) << (num_qubits - k);
}

} // namespace

MultiQubitPureState make_gghz(std::complex<double> a, std::complex<double> b, int num_qubits,
                              const Tolerances& tol) {
  check_num_qubits(num_qubits);
  VectorXcd amp = VectorXcd::Zero(Eigen::Index(1) << num_qubits);
  amp(0) = a;
  amp(amp.size() - 1) = b;
  return states::make_pure(num_qubits, amp, tol);
}

MultiQubitPureState make_gw(const VectorXd& c, int num_qubits, const Tolerances& tol) {
  check_num_qubits(num_qubits);
  if (c.size() != num_qubits) {
    throw BadParameter("generalized W state needs one coefficient per qubit");
  }
  VectorXcd amp = VectorXcd::Zero(Eigen::Index(1) << num_qubits);
  for (int k = 1; k <= num_qubits; ++k) amp(excitation_index(k, num_qubits)) = c(k - 1);
  return states::make_pure(num_qubits, amp, tol);
}

MultiQubitPureState make_slocc_w(double c0, const VectorXd& c, int num_qubits,
                                 const Tolerances& tol) {
  check_num_qubits(num_qubits);
  if (c.size() != num_qubits) {
    throw BadParameter("W-class state needs one coefficient per qubit");
  }
  VectorXcd amp = VectorXcd::Zero(Eigen::Index(1) << num_qubits);
  amp(0) = c0;
  for (int k = 1; k <= num_qubits; ++k) amp(excitation_index(k, num_qubits)) = c(k - 1);
  return states::make_pure(num_qubits, amp, tol);
}

MultiQubitPureState make_counterexample(double p, int num_qubits, const Tolerances& tol) {
  check_num_qubits(num_qubits);
  if (p < 0.0 || p > 1.0) throw BadParameter("counterexample parameter p must be in [0, 1]");
  VectorXcd amp = VectorXcd::Zero(Eigen::Index(1) << num_qubits);
  const double w = std::sqrt((1.0 - p) / 2.0);
  amp(0) = std::sqrt(p);
  amp((Eigen::Index(1) << (num_qubits - 1)) - 1) = w; // |0>|1...1>
  amp(amp.size() - 1) = w;                            // |1>|1...1>
  return states::make_pure(num_qubits, amp, tol);
}

double cut_discord(const MultiQubitPureState& s, int anchor) {
  const int nq = s.num_qubits;
  if (anchor < 1 || anchor > nq) throw IndexOutOfRange("anchor qubit out of range");
  const int bit = nq - anchor;
  const std::size_t dim = std::size_t(1) << nq;

  // rho_anchor by direct contraction over the other qubits
  std::complex<double> r00 = 0.0, r01 = 0.0, r11 = 0.0;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if ((idx >> bit) & 1u) continue;
    const std::complex<double> a0 = s.amplitudes(Eigen::Index(idx));
    const std::complex<double> a1 = s.amplitudes(Eigen::Index(idx | (std::size_t(1) << bit)));
    r00 += a0 * std::conj(a0);
    r11 += a1 * std::conj(a1);
    r01 += a0 * std::conj(a1);
  }
  return 2.0 * (r00.real() * r11.real() - std::norm(r01));
}

double pair_discord(const MultiQubitPureState& s, int k, int anchor, const Tolerances& tol) {
  const states::BipartiteState rdm = states::reduce_pure_to_pair(s, anchor, k, tol);
  return bounds::gd_lower_bound(bloch::decompose(rdm), tol); // exact for 2x2
}

MonogamyReport monogamy_report(const MultiQubitPureState& s, int anchor, const Tolerances& tol) {
  check_num_qubits(s.num_qubits);
  MonogamyReport rep;
  rep.num_qubits = s.num_qubits;
  rep.pair_discords.resize(s.num_qubits - 1);
  int idx = 0;
  for (int k = 1; k <= s.num_qubits; ++k) {
    if (k == anchor) continue;
    rep.pair_discords(idx++) = pair_discord(s, k, anchor, tol);
  }
  rep.cut_discord = cut_discord(s, anchor);
  rep.lhs_sum = rep.pair_discords.sum();
  rep.deficit = rep.cut_discord - rep.lhs_sum;
  rep.satisfied = rep.deficit >= tol.deficit_slack;
  return rep;
}

double w_pair_discord_closed_form(double c1, double ck) {
  const double s = c1 * c1 * ck * ck;
  const double u = 1.0 - 2.0 * c1 * c1;
  const double w = 1.0 - 2.0 * c1 * c1 - 2.0 * ck * ck;
  return s + 0.25 * std::min(4.0 * s, u * u + w * w);
}

std::array<double, 3> slocc_w_spectrum(double c0, double c1, double ck) {
  const double c0s = c0 * c0, c1s = c1 * c1, cks = ck * ck;
  const double lambda1 = 4.0 * c1s * cks;
  const double u = 1.0 - 2.0 * c1s;
  const double a = u * u - 2.0 * cks * (1.0 - c0s - cks - c1s) + 4.0 * c1s * (c0s + cks);
  const double m1 = -1.0 + 2.0 * c0s + 2.0 * c1s;
  double b = 8.0 * c1s * cks * (-m1 * m1 - 2.0 * (-1.0 + 3.0 * c0s + 2.0 * c1s) * cks -
                                2.0 * cks * cks) +
             a * a;
  if (b < -1e-12) {
    throw BadParameter("inconsistent W-class coefficients: discriminant " + std::to_string(b));
  }
  b = std::max(b, 0.0);
  const double root = std::sqrt(b);
  return {lambda1, a + root, a - root};
}

double slocc_w_pair_discord_closed_form(double c0, double c1, double ck) {
  const double c0s = c0 * c0, c1s = c1 * c1, cks = ck * ck;
  const auto lam = slocc_w_spectrum(c0, c1, ck);
  const double u = 1.0 - 2.0 * c1s;
  const double w = 1.0 - 2.0 * c1s - 2.0 * cks;
  const double norm_sum = 8.0 * c1s * cks + 8.0 * c0s * c1s + u * u + 4.0 * c0s * cks + w * w;
  const double top = std::max({lam[0], lam[1], lam[2]});
  const double value = 0.25 * (norm_sum - top);
  return value < 0.0 ? 0.0 : value;
}

} // namespace qcorr::monogamy
