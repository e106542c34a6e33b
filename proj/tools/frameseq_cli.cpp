// Command-line front end for the frame-sequence design toolchain:
// validate / rules / screen / simulate / scaling / selection-check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "frameseq/magnus_ops.hpp"
#include "frameseq/search.hpp"
#include "frameseq/simulator.hpp"

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct CommonFlags {
  std::uint64_t seed = 0;
  int threads = 1;
  double tolerance = 1e-9;
  double tau_p_ratio = -1.0;  // <0: keep the file's tau_p
  bool exact_boundary = false;
  bool table_constants = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "random seed");
  cmd->add_option("--threads", flags.threads, "worker threads");
  cmd->add_option("--tolerance", flags.tolerance, "pass/fail tolerance (times T^order+1)");
  cmd->add_option("--tau-p-ratio", flags.tau_p_ratio,
                  "override pulse duration as a ratio of the mean free evolution time");
  cmd->add_flag("--exact-boundary", flags.exact_boundary,
                "evaluate first-order integrals on the literal single-cycle timeline");
  cmd->add_flag("--table-constants", flags.table_constants,
                "use the rule-table variants of the row 5/7 constants");
}

frameseq::PulseSequence load_with_overrides(const std::string& path, const CommonFlags& flags) {
  frameseq::PulseSequence seq = frameseq::load_frame_matrix(path);
  if (flags.tau_p_ratio >= 0.0 && !seq.frame_matrix.empty()) {
    seq.tau_p = flags.tau_p_ratio * (seq.free_time() / static_cast<double>(seq.size()));
    seq.validate();
  }
  return seq;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

frameseq::HamiltonianParams params_from_flags(double h1_hz, double h2_hz, double j_hz,
                                              const std::string& model, double lambda) {
  using frameseq::HamiltonianParams;
  const auto m =
      model == "xxz" ? HamiltonianParams::Model::Xxz : HamiltonianParams::Model::Dipolar;
  return HamiltonianParams::two_spin(kTwoPi * h1_hz, kTwoPi * h2_hz, kTwoPi * j_hz, m, lambda);
}

int run_validate(const std::string& path, const CommonFlags& flags) {
  const frameseq::PulseSequence seq = load_with_overrides(path, flags);
  const auto z = frameseq::zeroth_rules(seq);
  std::printf("frames %zu tau_p %.17g period %.17g\n", seq.size(), seq.tau_p, seq.period());
  std::printf("zeroth disorder residuals %.17g %.17g %.17g\n", z.disorder[0], z.disorder[1],
              z.disorder[2]);
  std::printf("interaction imbalance %.17g\n", z.interaction_imbalance);
  return 0;
}

int run_rules(const std::string& path, const std::vector<int>& rows, const CommonFlags& flags,
              const std::string& out_path) {
  const frameseq::PulseSequence seq = load_with_overrides(path, flags);
  frameseq::RuleOptions opts;
  opts.table_constants = flags.table_constants;
  const frameseq::RuleReport report =
      frameseq::evaluate_ruleset(seq, rows, flags.tolerance, opts);
  std::ofstream file;
  open_output(file, out_path) << frameseq::format_rule_report(report);
  return 0;
}

int run_screen(const std::string& config_path, const std::string& out_dir,
               const CommonFlags& flags, bool seed_set, bool threads_set, bool tol_set,
               double h1, double h2, double j, const std::string& model, double lambda) {
  frameseq::SearchConfig cfg = frameseq::load_search_config(config_path);
  if (seed_set) cfg.seed = flags.seed;
  if (threads_set) cfg.threads = flags.threads;
  if (tol_set) cfg.tolerance = flags.tolerance;
  cfg.rule_options.table_constants = flags.table_constants;

  const auto hits = frameseq::screen(cfg);
  frameseq::HamiltonianParams params = params_from_flags(h1, h2, j, model, lambda);
  const auto ranking = frameseq::rank_candidates(
      hits, cfg, cfg.metric == frameseq::SearchConfig::Metric::SimulatedNorm ? &params : nullptr);
  frameseq::write_catalog(out_dir, hits, ranking);
  std::fprintf(stderr, "screened candidates, %zu survivors written to %s\n", hits.size(),
               out_dir.c_str());
  return 0;
}

int run_simulate(const std::string& path, const CommonFlags& flags, double h1, double h2,
                 double j, const std::string& model, double lambda, bool finite_pulses,
                 int steps, bool with_magnus, const std::string& out_path) {
  const frameseq::PulseSequence seq = load_with_overrides(path, flags);
  const frameseq::HamiltonianParams params = params_from_flags(h1, h2, j, model, lambda);
  const bool finite = finite_pulses && seq.tau_p > 0.0;
  const frameseq::Matrix u = frameseq::evolve_sequence(seq, params, finite, steps);
  const auto eff =
      frameseq::extract_effective_hamiltonian(u, frameseq::evolution_period(seq, finite));

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  char buf[64];
  for (int i = 0; i < eff.coeffs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s %.17g\n", eff.label(i).c_str(), eff.coeffs(i));
    out << buf;
  }
  if (with_magnus) {
    const frameseq::Matrix pred =
        frameseq::zeroth_order_hamiltonian(seq, params) +
        frameseq::first_order_hamiltonian(seq, params,
                                          flags.exact_boundary ? frameseq::BoundaryMode::Exact
                                                               : frameseq::BoundaryMode::Cyclic);
    const Eigen::VectorXd coeffs = frameseq::pauli_decompose(pred);
    for (int i = 0; i < coeffs.size(); ++i) {
      std::snprintf(buf, sizeof buf, "magnus %s %.17g\n", eff.label(i).c_str(), coeffs(i));
      out << buf;
    }
  }
  return 0;
}

int run_scaling(const std::string& path, const CommonFlags& flags, double h1, double h2,
                double j, const std::string& model, double lambda,
                const std::string& component, const std::string& sweep, int points,
                double min_factor, double max_factor, bool finite_pulses,
                const std::string& out_path) {
  const frameseq::PulseSequence seq = load_with_overrides(path, flags);
  const frameseq::HamiltonianParams params = params_from_flags(h1, h2, j, model, lambda);
  if (points < 2) throw std::invalid_argument("need at least 2 sweep points");
  std::vector<double> factors;
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    factors.push_back(min_factor * std::pow(max_factor / min_factor, t));
  }
  const auto target = sweep == "coupling" ? frameseq::SweepTarget::Coupling
                                          : frameseq::SweepTarget::Disorder;
  const auto fit = frameseq::error_scaling_fit(seq, params, target, factors, component,
                                               finite_pulses && seq.tau_p > 0.0);

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  char buf[96];
  out << "# scale magnitude\n";
  for (std::size_t i = 0; i < fit.scales.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", fit.scales[i], fit.magnitudes[i]);
    out << buf;
  }
  if (fit.degenerate) {
    out << "# fit degenerate (component consistent with zero)\n";
  } else {
    std::snprintf(buf, sizeof buf, "# exponent %.17g rms %.17g\n", fit.exponent,
                  fit.rms_residual);
    out << buf;
  }
  return 0;
}

int run_selection_check(int trials, const CommonFlags& flags) {
  const auto rep = frameseq::verify_selection_rules(trials, flags.seed);
  for (std::size_t i = 0; i < rep.names.size(); ++i) {
    std::printf("%-64s max|dev| = %.3e\n", rep.names[i].c_str(), rep.max_deviation[i]);
  }
  const bool ok = rep.pass(1e-12);
  std::printf("selection rules over %d trials: %s\n", rep.trials, ok ? "PASS" : "FAIL");
  if (!ok) throw std::runtime_error("selection-rule identities violated");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frame-sequence design toolchain"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string in_path, out_path, config_path, out_dir = "catalog";
  std::vector<int> rows = {0, 1, 2, 3, 4, 5, 7};
  double h1 = 0.0, h2 = 0.0, j = 0.0, lambda = 0.0;
  std::string model = "dipolar", component = "XZ", sweep = "disorder";
  bool finite_pulses = false, with_magnus = false;
  int steps = 64, trials = 1000, points = 9;
  double min_factor = 0.25, max_factor = 4.0;

  CLI::App* validate = app.add_subcommand("validate", "parse a frame-matrix file");
  validate->add_option("file", in_path)->required();
  add_common(validate, flags);

  CLI::App* rules = app.add_subcommand("rules", "evaluate decoupling-rule residuals");
  rules->add_option("file", in_path)->required();
  rules->add_option("--rows", rows, "rule rows to evaluate (0..7)");
  rules->add_option("-o,--out", out_path, "output file (default stdout)");
  add_common(rules, flags);

  CLI::App* screen_cmd = app.add_subcommand("screen", "enumerate and screen candidates");
  screen_cmd->add_option("config", config_path)->required();
  screen_cmd->add_option("-o,--out", out_dir, "catalog directory");
  screen_cmd->add_option("--h1", h1, "disorder on spin 1, Hz (simulated metric)");
  screen_cmd->add_option("--h2", h2, "disorder on spin 2, Hz");
  screen_cmd->add_option("--j", j, "coupling, Hz");
  screen_cmd->add_option("--model", model, "dipolar|xxz");
  screen_cmd->add_option("--lambda", lambda, "xxz anisotropy");
  add_common(screen_cmd, flags);

  CLI::App* simulate = app.add_subcommand("simulate", "effective-Hamiltonian dump");
  simulate->add_option("file", in_path)->required();
  simulate->add_option("--h1", h1)->required();
  simulate->add_option("--h2", h2);
  simulate->add_option("--j", j);
  simulate->add_option("--model", model, "dipolar|xxz");
  simulate->add_option("--lambda", lambda);
  simulate->add_flag("--finite-pulses", finite_pulses);
  simulate->add_option("--steps", steps, "integration steps per pulse");
  simulate->add_flag("--magnus", with_magnus, "append zeroth+first order prediction");
  simulate->add_option("-o,--out", out_path);
  add_common(simulate, flags);

  CLI::App* scaling = app.add_subcommand("scaling", "error-component scaling fit");
  scaling->add_option("file", in_path)->required();
  scaling->add_option("--h1", h1)->required();
  scaling->add_option("--h2", h2);
  scaling->add_option("--j", j);
  scaling->add_option("--model", model);
  scaling->add_option("--lambda", lambda);
  scaling->add_option("--component", component, "Pauli label, e.g. XZ");
  scaling->add_option("--sweep", sweep, "disorder|coupling");
  scaling->add_option("--points", points);
  scaling->add_option("--min-factor", min_factor);
  scaling->add_option("--max-factor", max_factor);
  scaling->add_flag("--finite-pulses", finite_pulses);
  scaling->add_option("-o,--out", out_path);
  add_common(scaling, flags);

  CLI::App* selcheck = app.add_subcommand("selection-check", "two-qubit commutator identities");
  selcheck->add_option("--trials", trials);
  add_common(selcheck, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(in_path, flags);
    if (app.got_subcommand(rules)) return run_rules(in_path, rows, flags, out_path);
    if (app.got_subcommand(screen_cmd))
      return run_screen(config_path, out_dir, flags, screen_cmd->count("--seed") > 0,
                        screen_cmd->count("--threads") > 0,
                        screen_cmd->count("--tolerance") > 0, h1, h2, j, model, lambda);
    if (app.got_subcommand(simulate))
      return run_simulate(in_path, flags, h1, h2, j, model, lambda, finite_pulses, steps,
                          with_magnus, out_path);
    if (app.got_subcommand(scaling))
      return run_scaling(in_path, flags, h1, h2, j, model, lambda, component, sweep, points,
                         min_factor, max_factor, finite_pulses, out_path);
    if (app.got_subcommand(selcheck)) return run_selection_check(trials, flags);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
