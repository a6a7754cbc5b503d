#pragma once

#include <array>
#include <complex>

#include "qcorr/states.hpp"

namespace qcorr::monogamy {

using Eigen::VectorXd;
using states::MultiQubitPureState;

struct MonogamyReport {
  int num_qubits = 0;
  VectorXd pair_discords; // D(rho_{1k}) for k = 2..N (anchored pairs, ascending k)
  double cut_discord = 0.0; // D across the 1 | rest cut
  double lhs_sum = 0.0;
  double deficit = 0.0; // cut_discord - lhs_sum
  bool satisfied = false;
};

// a|0...0> + b|1...1>
MultiQubitPureState make_gghz(std::complex<double> a, std::complex<double> b, int num_qubits,
                              const Tolerances& tol = default_tolerances());

// sum_k c_k |0..1_k..0>
MultiQubitPureState make_gw(const VectorXd& c, int num_qubits,
                            const Tolerances& tol = default_tolerances());

// c0|0...0> + sum_k c_k |0..1_k..0>
MultiQubitPureState make_slocc_w(double c0, const VectorXd& c, int num_qubits,
                                 const Tolerances& tol = default_tolerances());

// sqrt(p)|0...0> + sqrt(1-p)|+>|1...1>
MultiQubitPureState make_counterexample(double p, int num_qubits,
                                        const Tolerances& tol = default_tolerances());

// 2 det(rho_anchor): the exact GD across the anchor | rest cut of a pure state.
double cut_discord(const MultiQubitPureState& s, int anchor = 1);

// Exact GD of the two-qubit reduced state of (anchor, k), via the saturated
// 2 (x) n lower bound.
double pair_discord(const MultiQubitPureState& s, int k, int anchor = 1,
                    const Tolerances& tol = default_tolerances());

MonogamyReport monogamy_report(const MultiQubitPureState& s, int anchor = 1,
                               const Tolerances& tol = default_tolerances());

// c1^2 ck^2 + (1/4) min{ 4 c1^2 ck^2, (1-2c1^2)^2 + (1-2c1^2-2ck^2)^2 }
double w_pair_discord_closed_form(double c1, double ck);

// Eigenvalues of x x^t + T T^t for the (anchor, k) reduced state of the
// W-class family with a |0...0> component: { 4 c1^2 ck^2, a + sqrt(b), a - sqrt(b) }.
std::array<double, 3> slocc_w_spectrum(double c0, double c1, double ck);

// Pair discord from the closed-form spectrum above.
double slocc_w_pair_discord_closed_form(double c0, double c1, double ck);

} // namespace qcorr::monogamy
