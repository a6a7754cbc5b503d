// qcorr: bounds on geometric discord and measurement-induced nonlocality,
// candidate optimal measurements, numerical measurement optimization, and
// monogamy analysis for multiqubit pure-state families.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/serialize.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using qcorr::Tolerances;
using qcorr::io::FileError;
using qcorr::io::json;
namespace states = qcorr::states;
namespace bloch = qcorr::bloch;
namespace bounds = qcorr::bounds;
namespace oracle = qcorr::oracle;
namespace monogamy = qcorr::monogamy;

struct GlobalOpts {
  bool json_out = false;
  std::uint64_t seed = 0;
  double tol = 0.0; // 0 means defaults
  std::string command;

  Tolerances tolerances() const {
    Tolerances t{};
    if (tol > 0.0) {
      t.hermiticity = tol;
      t.unit_trace = tol;
      t.psd_min_eig = -tol;
      t.pure_norm = tol;
    }
    return t;
  }
};

struct StateSource {
  std::string file;
  std::string family;
  int m = 2;
  int n = 0; // 0: defaults to m
  double z = 1.0;
  int rank = 0; // 0: full rank

  void attach(CLI::App* cmd) {
    cmd->add_option("--file", file, "state file (JSON: m, n, re, im)");
    cmd->add_option("--family", family, "bell | werner | isotropic | maxmixed | random");
    cmd->add_option("--m", m, "dimension of subsystem A");
    cmd->add_option("--n", n, "dimension of subsystem B (defaults to m)");
    cmd->add_option("--z", z, "family parameter");
    cmd->add_option("--rank", rank, "rank for the random family (defaults to m*n)");
  }

  states::BipartiteState resolve(const GlobalOpts& g) const {
    const Tolerances tol = g.tolerances();
    if (!file.empty()) return qcorr::io::read_state_file(file, tol);
    const int nn = n > 0 ? n : m;
    if (family == "bell") return states::make_isotropic(2, 1.0, tol);
    if (family == "werner") return states::make_werner(m, z, tol);
    if (family == "isotropic") return states::make_isotropic(m, z, tol);
    if (family == "maxmixed") {
      const int d = m * nn;
      return states::validate_state(Eigen::MatrixXcd::Identity(d, d) / double(d), m, nn, tol);
    }
    if (family == "random") {
      const int r = rank > 0 ? rank : m * nn;
      return states::random_state(m, nn, r, g.seed, tol);
    }
    if (family.empty()) throw FileError("no state source: pass --file or --family");
    throw FileError("unknown family '" + family + "'");
  }
};

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

void emit_report(const GlobalOpts& g, const std::string& kind, const std::string& digest,
                 json report) {
  json file{{"tool", "qcorr"},
            {"version", kVersion},
            {"command", g.command},
            {"seed", g.seed},
            {"input_digest", digest},
            {"kind", kind},
            {"report", std::move(report)}};
  std::cout << file.dump(2) << "\n";
}

std::ostream& num(std::ostream& os) { return os << std::setprecision(17); }

// ---- decompose ----

int cmd_decompose(const GlobalOpts& g, const StateSource& src) {
  const states::BipartiteState s = src.resolve(g);
  const bloch::BlochForm b = bloch::decompose(s);
  const double purity_direct = (s.rho * s.rho).trace().real();
  const double purity_residual = std::abs(bloch::purity(b) - purity_direct);
  const double roundtrip_residual = (bloch::reconstruct(b) - s.rho).cwiseAbs().maxCoeff();
  if (g.json_out) {
    json rep = qcorr::io::to_json(b);
    rep["purity"] = purity_direct;
    rep["purity_residual"] = purity_residual;
    rep["roundtrip_residual"] = roundtrip_residual;
    emit_report(g, "decompose", qcorr::io::digest_hex(s), std::move(rep));
    return 0;
  }
  num(std::cout) << "bloch decomposition (m=" << b.m << ", n=" << b.n << ")\n"
                 << "x: " << b.x.transpose() << "\n"
                 << "y: " << b.y.transpose() << "\n"
                 << "T:\n"
                 << b.T << "\n"
                 << "purity            = " << purity_direct << "\n"
                 << "purity residual   = " << purity_residual << "\n"
                 << "roundtrip residual= " << roundtrip_residual << "\n";
  return 0;
}

// ---- bounds ----

json closed_form_entry(const StateSource& src) {
  if (src.family == "werner") return bounds::werner_gd(src.m, src.z);
  if (src.family == "isotropic") return bounds::isotropic_gd(src.m, src.z);
  if (src.family == "bell") return bounds::isotropic_gd(2, 1.0);
  return nullptr;
}

int cmd_bounds(const GlobalOpts& g, const StateSource& src, bool with_oracle, int restarts,
               int iterations) {
  const states::BipartiteState s = src.resolve(g);
  const Tolerances tol = g.tolerances();
  const bounds::BoundsReport rep = bounds::analyze(s, {}, tol);
  std::optional<oracle::GapReport> gap;
  if (with_oracle) {
    oracle::OracleConfig cfg;
    cfg.seed = g.seed;
    cfg.restarts = restarts;
    cfg.iterations = iterations;
    gap = oracle::gap_report(s, cfg, tol);
  }
  if (g.json_out) {
    json out = qcorr::io::to_json(rep);
    out["closed_form"] = closed_form_entry(src);
    if (gap) out["gap"] = qcorr::io::to_json(*gap);
    emit_report(g, "bounds", qcorr::io::digest_hex(s), std::move(out));
    return 0;
  }
  num(std::cout) << "bounds (m=" << rep.m << ", n=" << rep.n << ")\n"
                 << "gd_lower  = " << rep.gd_lower << "\n"
                 << "min_upper = " << rep.min_upper << "\n"
                 << "saturated = " << (rep.saturated ? "yes" : "no") << "\n";
  if (rep.gd_exact) num(std::cout) << "gd_exact  = " << *rep.gd_exact << "\n";
  if (rep.min_exact) num(std::cout) << "min_exact = " << *rep.min_exact << "\n";
  num(std::cout) << "candidate measurement valid = " << (rep.candidate.valid() ? "yes" : "no")
                 << "\n"
                 << "D = N condition             = "
                 << (rep.d_equals_n_condition ? "yes" : "no") << "\n";
  if (gap) {
    num(std::cout) << "oracle_gd  = " << gap->oracle_gd << "  (gap " << gap->gd_gap << ")\n"
                   << "oracle_min = " << gap->oracle_min << "  (gap " << gap->min_gap << ")\n"
                   << "min constraint residual = " << gap->min_constraint_residual << "\n";
  }
  return 0;
}

// ---- measurement ----

int cmd_measurement(const GlobalOpts& g, const StateSource& src) {
  const states::BipartiteState s = src.resolve(g);
  const Tolerances tol = g.tolerances();
  const bloch::BlochForm b = bloch::decompose(s);
  const bounds::RelaxationData r = bounds::relaxation(b, {}, tol);
  const bounds::MeasurementCandidate c = bounds::candidate_measurement(r, tol);
  const double lower = bounds::gd_lower_bound(b, tol);
  const auto certified = bounds::certify_saturation(b, c, tol);
  if (g.json_out) {
    json rep{{"gd_lower", lower},
             {"certified", certified.has_value()},
             {"candidate", qcorr::io::to_json(c)},
             {"g_eigenvalues", json::array()},
             {"a_vectors", json::array()}};
    for (int i = 0; i < r.spectrum.eigenvalues.size(); ++i) {
      rep["g_eigenvalues"].push_back(r.spectrum.eigenvalues(i));
    }
    for (int k = 0; k < r.a_vectors.rows(); ++k) {
      json row = json::array();
      for (int i = 0; i < r.a_vectors.cols(); ++i) row.push_back(r.a_vectors(k, i));
      rep["a_vectors"].push_back(std::move(row));
    }
    emit_report(g, "measurement", qcorr::io::digest_hex(s), std::move(rep));
    return 0;
  }
  num(std::cout) << "candidate measurement (m=" << s.m << ")\n"
                 << "gd_lower = " << lower << (certified ? "  [attained]" : "  [not certified]")
                 << "\n";
  for (std::size_t k = 0; k < c.operators.size(); ++k) {
    num(std::cout) << "operator " << k + 1 << ": min eig = " << c.min_eigs[k]
                   << ", ||P^2-P|| = " << c.idem_residuals[k]
                   << (c.psd[k] && c.idempotent[k] ? "  (projector)" : "  (not a projector)")
                   << "\n"
                   << c.operators[k] << "\n";
  }
  return 0;
}

// ---- oracle ----

int cmd_oracle(const GlobalOpts& g, const StateSource& src, int restarts, int iterations) {
  const states::BipartiteState s = src.resolve(g);
  const Tolerances tol = g.tolerances();
  oracle::OracleConfig cfg;
  cfg.seed = g.seed;
  cfg.restarts = restarts;
  cfg.iterations = iterations;
  const oracle::GapReport gap = oracle::gap_report(s, cfg, tol);
  if (g.json_out) {
    emit_report(g, "oracle", qcorr::io::digest_hex(s), qcorr::io::to_json(gap));
    return 0;
  }
  num(std::cout) << "oracle (restarts=" << cfg.restarts << ", iterations=" << cfg.iterations
                 << ", seed=" << cfg.seed << ")\n"
                 << "gd_lower   = " << gap.gd_lower << "\n"
                 << "oracle_gd  = " << gap.oracle_gd << "  (gap " << gap.gd_gap << ")\n"
                 << "min_upper  = " << gap.min_upper << "\n"
                 << "oracle_min = " << gap.oracle_min << "  (gap " << gap.min_gap << ")\n"
                 << "min constraint residual = " << gap.min_constraint_residual << "\n";
  return 0;
}

// ---- sweep ----

std::vector<double> parse_grid(const std::string& spec) {
  double start = 0.0, stop = 0.0;
  int count = -1;
  char sep1 = 0, sep2 = 0;
  std::istringstream in(spec);
  if (!(in >> start >> sep1 >> stop >> sep2 >> count) || sep1 != ':' || sep2 != ':') {
    throw FileError("bad grid spec '" + spec + "', expected start:stop:count");
  }
  if (count < 1) throw FileError("grid count must be >= 1, got " + std::to_string(count));
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = start;
    return grid;
  }
  for (int i = 0; i < count; ++i) grid[i] = start + (stop - start) * double(i) / (count - 1);
  return grid;
}

int cmd_sweep(const GlobalOpts& g, const std::string& family, int m, int nq,
              const std::string& grid_spec, const std::string& out_path, bool with_oracle,
              int restarts, int iterations) {
  const Tolerances tol = g.tolerances();
  const std::vector<double> grid = parse_grid(grid_spec);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw FileError("cannot write CSV to " + out_path);
    os = &file;
  }
  *os << "param,gd_lower,min_upper,closed_form,oracle_gd,deficit\n";

  const bool is_monogamy_family = (family == "counterexample");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double param = grid[i];
    *os << qcorr::io::format_real(param) << ",";
    if (is_monogamy_family) {
      const auto st = monogamy::make_counterexample(param, nq, tol);
      const monogamy::MonogamyReport rep = monogamy::monogamy_report(st, 1, tol);
      *os << ",,,," << qcorr::io::format_real(rep.deficit) << "\n";
      continue;
    }
    states::BipartiteState s{};
    double closed = 0.0;
    if (family == "werner") {
      s = states::make_werner(m, param, tol);
      closed = bounds::werner_gd(m, param);
    } else if (family == "isotropic") {
      s = states::make_isotropic(m, param, tol);
      closed = bounds::isotropic_gd(m, param);
    } else {
      throw FileError("unknown sweep family '" + family + "'");
    }
    const bloch::BlochForm b = bloch::decompose(s);
    *os << qcorr::io::format_real(bounds::gd_lower_bound(b, tol)) << ","
        << qcorr::io::format_real(bounds::min_upper_bound(b, tol)) << ","
        << qcorr::io::format_real(closed) << ",";
    if (with_oracle) {
      oracle::OracleConfig cfg;
      cfg.restarts = restarts;
      cfg.iterations = iterations;
      cfg.seed = qcorr::Rng(g.seed).derive(i).next_u64();
      *os << qcorr::io::format_real(oracle::oracle_gd(s, cfg, tol).best_value);
    }
    *os << ",\n";
  }
  return 0;
}

// ---- monogamy ----

int cmd_monogamy(const GlobalOpts& g, const std::string& family, std::vector<double> coeffs,
                 double c0, double p, int nq, const std::string& file) {
  const Tolerances tol = g.tolerances();
  states::MultiQubitPureState st;
  json norm_factor = nullptr;
  if (!file.empty()) {
    st = qcorr::io::read_amplitude_file(file, tol);
  } else if (family == "counterexample") {
    if (nq <= 0) throw FileError("counterexample family needs --N");
    st = monogamy::make_counterexample(p, nq, tol);
  } else {
    // coefficient families accept unnormalized lists and renormalize
    double sq = c0 * c0;
    for (double c : coeffs) sq += c * c;
    if (sq <= 0.0) throw qcorr::NotNormalized("coefficient list has zero norm");
    const double factor = std::sqrt(sq);
    for (double& c : coeffs) c /= factor;
    const double c0n = c0 / factor;
    if (std::abs(factor - 1.0) > 1e-12) norm_factor = factor;
    if (family == "gghz") {
      if (coeffs.size() != 2) throw FileError("gghz needs --coeffs a,b");
      if (nq <= 0) throw FileError("gghz needs --N");
      st = monogamy::make_gghz(coeffs[0], coeffs[1], nq, tol);
    } else if (family == "gw") {
      const int n_from_list = int(coeffs.size());
      if (nq > 0 && nq != n_from_list) {
        throw FileError("gw: --N disagrees with the coefficient count");
      }
      st = monogamy::make_gw(Eigen::Map<Eigen::VectorXd>(coeffs.data(), n_from_list),
                             n_from_list, tol);
    } else if (family == "sloccw") {
      const int n_from_list = int(coeffs.size());
      st = monogamy::make_slocc_w(c0n,
                                  Eigen::Map<Eigen::VectorXd>(coeffs.data(), n_from_list),
                                  n_from_list, tol);
    } else if (family.empty()) {
      throw FileError("no input: pass --family or --file");
    } else {
      throw FileError("unknown monogamy family '" + family + "'");
    }
  }
  const monogamy::MonogamyReport rep = monogamy::monogamy_report(st, 1, tol);
  if (g.json_out) {
    json out = qcorr::io::to_json(rep);
    out["normalization_factor"] = norm_factor;
    emit_report(g, "monogamy", qcorr::io::digest_hex(st), std::move(out));
    return 0;
  }
  num(std::cout) << "monogamy report (" << rep.num_qubits << " qubits)\n"
                 << "pair discords: " << rep.pair_discords.transpose() << "\n"
                 << "lhs sum      = " << rep.lhs_sum << "\n"
                 << "cut discord  = " << rep.cut_discord << "\n"
                 << "deficit      = " << rep.deficit << "\n"
                 << "satisfied    = " << (rep.satisfied ? "yes" : "no") << "\n";
  if (!norm_factor.is_null()) {
    num(std::cout) << "coefficients renormalized by " << norm_factor.get<double>() << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric discord and measurement-induced nonlocality toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  g.command = join_args(argc, argv);
  app.add_flag("--json", g.json_out, "emit a machine-readable report");
  app.add_option("--seed", g.seed, "PRNG seed for random families and the oracle");
  app.add_option("--tol", g.tol, "override state-validation tolerance");

  // decompose
  auto* dec = app.add_subcommand("decompose", "Bloch decomposition of a state");
  StateSource dec_src;
  dec_src.attach(dec);

  // bounds
  auto* bnd = app.add_subcommand("bounds", "GD lower bound and MIN upper bound");
  StateSource bnd_src;
  bnd_src.attach(bnd);
  bool bnd_oracle = false;
  int bnd_restarts = 64, bnd_iters = 400;
  bnd->add_flag("--oracle", bnd_oracle, "also run the measurement-optimization oracle");
  bnd->add_option("--restarts", bnd_restarts, "oracle restarts");
  bnd->add_option("--iters", bnd_iters, "oracle iterations per restart");

  // measurement
  auto* mea = app.add_subcommand("measurement", "candidate optimal measurement");
  StateSource mea_src;
  mea_src.attach(mea);

  // oracle
  auto* orc = app.add_subcommand("oracle", "brute-force measurement optimization");
  StateSource orc_src;
  orc_src.attach(orc);
  int orc_restarts = 64, orc_iters = 400;
  orc->add_option("--restarts", orc_restarts, "oracle restarts");
  orc->add_option("--iters", orc_iters, "oracle iterations per restart");

  // sweep
  auto* swp = app.add_subcommand("sweep", "CSV parameter sweep");
  std::string swp_family, swp_grid, swp_out;
  int swp_m = 2, swp_nq = 4;
  bool swp_oracle = false;
  int swp_restarts = 64, swp_iters = 400;
  swp->add_option("--family", swp_family, "werner | isotropic | counterexample")->required();
  swp->add_option("--m", swp_m, "subsystem dimension (werner/isotropic)");
  swp->add_option("--N", swp_nq, "qubit count (counterexample)");
  swp->add_option("--grid", swp_grid, "start:stop:count")->required();
  swp->add_option("--out", swp_out, "output CSV path (stdout when omitted)");
  swp->add_flag("--oracle", swp_oracle, "fill the oracle_gd column");
  swp->add_option("--restarts", swp_restarts, "oracle restarts");
  swp->add_option("--iters", swp_iters, "oracle iterations per restart");

  // monogamy
  auto* mon = app.add_subcommand("monogamy", "monogamy report for a pure multiqubit state");
  std::string mon_family, mon_file;
  std::vector<double> mon_coeffs;
  double mon_c0 = 0.0, mon_p = 0.5;
  int mon_nq = 0;
  mon->add_option("--family", mon_family, "gghz | gw | sloccw | counterexample");
  mon->add_option("--coeffs", mon_coeffs, "coefficient list (renormalized)")->delimiter(',');
  mon->add_option("--c0", mon_c0, "|0...0> coefficient (sloccw)");
  mon->add_option("--p", mon_p, "counterexample parameter");
  mon->add_option("--N", mon_nq, "qubit count");
  mon->add_option("--file", mon_file, "amplitude file (JSON: qubits, re, im)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*dec) return cmd_decompose(g, dec_src);
    if (*bnd) return cmd_bounds(g, bnd_src, bnd_oracle, bnd_restarts, bnd_iters);
    if (*mea) return cmd_measurement(g, mea_src);
    if (*orc) return cmd_oracle(g, orc_src, orc_restarts, orc_iters);
    if (*swp) {
      return cmd_sweep(g, swp_family, swp_m, swp_nq, swp_grid, swp_out, swp_oracle, swp_restarts,
                       swp_iters);
    }
    if (*mon) return cmd_monogamy(g, mon_family, mon_coeffs, mon_c0, mon_p, mon_nq, mon_file);
  } catch (const qcorr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
