#include "frameseq/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "frameseq/rng.hpp"
#include "frameseq/simulator.hpp"

namespace frameseq {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (~0ull) / base) throw std::invalid_argument("candidate space exceeds 2^64");
    out *= base;
  }
  return out;
}

bool adjacent_ok(const Axis& a, const Axis& b, bool perpendicular) {
  return perpendicular ? a.is_perpendicular(b) : a != b;
}

}  // namespace

void validate_search_config(const SearchConfig& config) {
  const StructureConstraints& c = config.constraints;
  if (c.length < 1) throw std::invalid_argument("length must be >= 1");
  if (c.echo_pairing && c.length % 2 != 0)
    throw std::invalid_argument("echo pairing needs an even frame count");
  if (c.row_balance) {
    const int units = c.echo_pairing ? c.length / 2 : c.length;
    if (units % 3 != 0)
      throw std::invalid_argument("row balance needs a frame count divisible by 3 axes");
  }
  if (c.dipole_balance && !c.echo_pairing)
    throw std::invalid_argument("dipole balance orders echo pairs; enable echo pairing");
  if (c.dipole_balance) {
    const int pairs = c.length / 2;
    if (c.row_balance && (pairs / 3) % 2 != 0)
      throw std::invalid_argument("dipole balance needs an even number of echo pairs per axis");
    if (!c.row_balance && pairs % 2 != 0)
      throw std::invalid_argument("dipole balance needs an even number of echo pairs");
  }
  if (config.tau <= 0.0) throw std::invalid_argument("tau must be positive");
  if (config.tau_p_ratio < 0.0) throw std::invalid_argument("tau_p ratio must be >= 0");
  if (config.tau_p_ratio > 0.0 && c.echo_pairing)
    throw std::invalid_argument(
        "echo pairs join antipodal frames; finite-pulse screening needs explicit "
        "intermediate pulse frames, screen with tau_p_ratio 0 instead");
  if (config.budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (config.threads < 1) throw std::invalid_argument("threads must be >= 1");
  for (int row : config.rule_rows)
    if (row < 0 || row > 7) throw std::invalid_argument("rule rows are 0..7");
}

CandidateSpace::CandidateSpace(const StructureConstraints& constraints,
                               bool perpendicular_adjacency)
    : c_(constraints), perp_(perpendicular_adjacency) {
  if (c_.echo_pairing) {
    const int pairs = c_.length / 2;
    const int free_axis = c_.fix_first_frame ? pairs - 1 : pairs;
    const int free_sign = c_.fix_first_frame ? pairs - 1 : pairs;
    sign_states_ = pow_u64(2, std::max(free_sign, 0));
    size_ = pow_u64(3, std::max(free_axis, 0)) * sign_states_;
  } else {
    const int free_frames = c_.fix_first_frame ? c_.length - 1 : c_.length;
    sign_states_ = 0;
    size_ = pow_u64(6, std::max(free_frames, 0));
  }
}

std::optional<std::vector<Axis>> CandidateSpace::decode(std::uint64_t index) const {
  std::vector<Axis> frames;
  frames.reserve(static_cast<std::size_t>(c_.length));

  if (c_.echo_pairing) {
    const int pairs = c_.length / 2;
    std::uint64_t signs = index % sign_states_;
    std::uint64_t axes = index / sign_states_;

    std::array<int, 3> axis_count{};
    std::array<std::array<int, 2>, 3> order_count{};
    for (int p = 0; p < pairs; ++p) {
      int comp;
      int sgn;
      if (c_.fix_first_frame && p == 0) {
        comp = 2;  // z
        sgn = 0;   // +-
      } else {
        comp = static_cast<int>(axes % 3);
        axes /= 3;
        sgn = static_cast<int>(signs % 2);
        signs /= 2;
      }
      axis_count[static_cast<std::size_t>(comp)]++;
      order_count[static_cast<std::size_t>(comp)][static_cast<std::size_t>(sgn)]++;
      const Axis plus(comp + 1);
      frames.push_back(sgn == 0 ? plus : plus.negated());
      frames.push_back(sgn == 0 ? plus.negated() : plus);
    }
    if (c_.row_balance &&
        !(axis_count[0] == axis_count[1] && axis_count[1] == axis_count[2]))
      return std::nullopt;
    if (c_.dipole_balance) {
      for (const auto& oc : order_count)
        if (oc[0] != oc[1]) return std::nullopt;
    }
  } else {
    std::uint64_t rest = index;
    std::array<int, 3> axis_count{};
    for (int k = 0; k < c_.length; ++k) {
      int code;
      if (c_.fix_first_frame && k == 0) {
        code = 3;  // +z
      } else {
        code = static_cast<int>(rest % 6) + 1;
        rest /= 6;
      }
      const Axis a(code);
      axis_count[static_cast<std::size_t>(a.component())]++;
      frames.push_back(a);
    }
    if (c_.row_balance &&
        !(axis_count[0] == axis_count[1] && axis_count[1] == axis_count[2]))
      return std::nullopt;
  }

  const std::size_t n = frames.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!adjacent_ok(frames[k], frames[(k + 1) % n], perp_)) return std::nullopt;
  }
  return frames;
}

namespace {

PulseSequence build_candidate(const SearchConfig& config, const std::vector<Axis>& axes) {
  PulseSequence seq =
      make_sequence(axes, config.tau, config.tau_p_ratio * config.tau);
  switch (config.symmetrization) {
    case SearchConfig::SymMode::None:
      return seq;
    case SearchConfig::SymMode::Antisymmetric:
      return apply_symmetrization(seq, Symmetrization::Antisymmetric);
    case SearchConfig::SymMode::Mirror:
      return apply_symmetrization(seq, Symmetrization::Mirror);
  }
  return seq;
}

// Candidate identity: index into the constraint product space.
std::uint64_t draw_index(const SearchConfig& config, const CandidateSpace& space,
                         std::uint64_t draw) {
  CounterRng rng(config.seed, draw);
  return rng.next_below(space.size());
}

bool residual_passes(const PairResidual& r, double bound) {
  return std::abs(r.main) <= bound && std::abs(r.pulse) <= bound && std::abs(r.q) <= bound;
}

// Early-exit version of the ruleset check; pass criteria identical to
// evaluate_ruleset.
bool passes_ruleset(const PulseSequence& seq, const std::vector<int>& rows, double tol,
                    const RuleOptions& opts) {
  const double period = seq.period();
  const double b1 = tol * period;
  const double b2 = tol * period * period;
  const double b3 = tol * period * period * period;
  for (int row : rows) {
    switch (row) {
      case 0: {
        const ZerothResiduals z = zeroth_rules(seq);
        for (int mu = 0; mu < 3; ++mu)
          if (std::abs(z.disorder[mu]) > b1) return false;
        if (std::abs(z.interaction_imbalance) > b1) return false;
        break;
      }
      case 1:
        for (int mu = 0; mu < 3; ++mu)
          for (int nu = 0; nu < 3; ++nu)
            if (mu != nu && !residual_passes(rule_row1_disorder_disorder(seq, mu, nu), b2))
              return false;
        break;
      case 2:
        for (int mu = 0; mu < 3; ++mu)
          for (int nu = 0; nu < 3; ++nu)
            if (mu != nu && !residual_passes(rule_row2_disorder_ising(seq, mu, nu), b2))
              return false;
        break;
      case 3:
        for (int mu = 0; mu < 3; ++mu)
          for (int nu = 0; nu < 3; ++nu)
            if (mu != nu && !residual_passes(rule_row3_ising_ising(seq, mu, nu), b2))
              return false;
        break;
      case 4:
        for (int mu = 0; mu < 3; ++mu)
          if (std::abs(rule_row4_disorder_heisenberg(seq, mu)) > b2) return false;
        break;
      case 5:
        for (int mu = 0; mu < 3; ++mu)
          if (!residual_passes(rule_row5_ising_heisenberg(seq, mu, opts), b2)) return false;
        break;
      case 6:
        break;
      case 7:
        for (int mu = 0; mu < 3; ++mu)
          for (int nu = 0; nu < 3; ++nu)
            for (int rho = 0; rho < 3; ++rho)
              if (nu != rho &&
                  std::abs(rule_row7_second_order_disorder(seq, mu, nu, rho, opts)) > b3)
                return false;
        break;
      default:
        throw std::invalid_argument("unknown rule row");
    }
  }
  return true;
}

}  // namespace

void enumerate_candidates(const SearchConfig& config,
                          const std::function<bool(std::uint64_t, const PulseSequence&)>& sink) {
  validate_search_config(config);
  const CandidateSpace space(config.constraints, config.tau_p_ratio > 0.0);

  if (config.sampler == SearchConfig::Sampler::Exhaustive) {
    for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
      const auto axes = space.decode(idx);
      if (!axes) continue;
      if (!sink(idx, make_sequence(*axes, config.tau, config.tau_p_ratio * config.tau)))
        return;
    }
  } else {
    for (std::uint64_t draw = 0; draw < config.budget; ++draw) {
      const std::uint64_t idx = draw_index(config, space, draw);
      const auto axes = space.decode(idx);
      if (!axes) continue;
      if (!sink(idx, make_sequence(*axes, config.tau, config.tau_p_ratio * config.tau)))
        return;
    }
  }
}

std::vector<ScreenHit> screen(const SearchConfig& config) {
  validate_search_config(config);
  const CandidateSpace space(config.constraints, config.tau_p_ratio > 0.0);
  const bool exhaustive = config.sampler == SearchConfig::Sampler::Exhaustive;
  const std::uint64_t total = exhaustive ? space.size() : config.budget;

  const int workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(config.threads), std::max<std::uint64_t>(total, 1)));
  std::vector<std::vector<ScreenHit>> partial(static_cast<std::size_t>(workers));

  auto run_range = [&](int w, std::uint64_t lo, std::uint64_t hi) {
    auto& out = partial[static_cast<std::size_t>(w)];
    for (std::uint64_t i = lo; i < hi; ++i) {
      const std::uint64_t idx = exhaustive ? i : draw_index(config, space, i);
      const auto axes = space.decode(idx);
      if (!axes) continue;
      const PulseSequence seq = build_candidate(config, *axes);
      if (!passes_ruleset(seq, config.rule_rows, config.tolerance, config.rule_options))
        continue;
      ScreenHit hit;
      hit.id = idx;
      hit.sequence = seq;
      hit.report =
          evaluate_ruleset(seq, config.rule_rows, config.tolerance, config.rule_options);
      out.push_back(std::move(hit));
    }
  };

  if (workers == 1) {
    run_range(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t lo = chunk * static_cast<std::uint64_t>(w);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
      pool.emplace_back(run_range, w, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  std::vector<ScreenHit> hits;
  for (auto& p : partial)
    for (auto& h : p) hits.push_back(std::move(h));

  // candidate identity order; random draws may repeat an index
  std::stable_sort(hits.begin(), hits.end(),
                   [](const ScreenHit& a, const ScreenHit& b) { return a.id < b.id; });
  hits.erase(std::unique(hits.begin(), hits.end(),
                         [](const ScreenHit& a, const ScreenHit& b) { return a.id == b.id; }),
             hits.end());
  return hits;
}

double residual_norm(const RuleReport& report) {
  double ss = 0.0;
  for (const RuleResidual& r : report.rows)
    ss += r.main * r.main + r.pulse * r.pulse + r.q * r.q;
  return std::sqrt(ss);
}

namespace {

bool frames_less(const PulseSequence& a, const PulseSequence& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.frame(k).axis.code() != b.frame(k).axis.code())
      return a.frame(k).axis.code() < b.frame(k).axis.code();
  }
  return a.size() < b.size();
}

}  // namespace

std::vector<RankedCandidate> rank_candidates(const std::vector<ScreenHit>& hits,
                                             const SearchConfig& config,
                                             const HamiltonianParams* params) {
  std::vector<RankedCandidate> ranked;
  ranked.reserve(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) {
    RankedCandidate rc;
    rc.hit_index = i;
    rc.id = hits[i].id;
    rc.residual_norm = residual_norm(hits[i].report);
    if (config.metric == SearchConfig::Metric::ResidualNorm) {
      rc.metric = rc.residual_norm;
    } else {
      if (!params)
        throw std::invalid_argument("simulated metric needs Hamiltonian parameters");
      const bool finite = hits[i].sequence.tau_p > 0.0;
      const Matrix u = evolve_sequence(hits[i].sequence, *params, finite);
      rc.metric =
          extract_effective_hamiltonian(u, evolution_period(hits[i].sequence, finite))
              .error_norm();
    }
    ranked.push_back(rc);
  }
  std::sort(ranked.begin(), ranked.end(),
            [&hits](const RankedCandidate& a, const RankedCandidate& b) {
              if (a.metric != b.metric) return a.metric < b.metric;
              if (frames_less(hits[a.hit_index].sequence, hits[b.hit_index].sequence))
                return true;
              if (frames_less(hits[b.hit_index].sequence, hits[a.hit_index].sequence))
                return false;
              return a.id < b.id;
            });
  return ranked;
}

void write_catalog(const std::string& directory, const std::vector<ScreenHit>& hits,
                   const std::vector<RankedCandidate>& ranking) {
  std::filesystem::create_directories(directory);
  std::string index_text = "# rank id metric residual_norm\n";
  char buf[128];
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    const RankedCandidate& rc = ranking[r];
    std::snprintf(buf, sizeof buf, "seq_%04zu.fm", r + 1);
    save_frame_matrix(hits[rc.hit_index].sequence,
                      (std::filesystem::path(directory) / buf).string());
    std::snprintf(buf, sizeof buf, "%zu %llu %.17g %.17g\n", r + 1,
                  static_cast<unsigned long long>(rc.id), rc.metric, rc.residual_norm);
    index_text += buf;
  }
  std::ofstream out(std::filesystem::path(directory) / "index.txt");
  if (!out) throw std::runtime_error("cannot write catalog index");
  out << index_text;
}

// ----------------------------------------------------------------------
// Config file parsing
// ----------------------------------------------------------------------

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "0" || v == "false" || v == "no") return false;
  if (v == "1" || v == "true" || v == "yes") return true;
  throw std::invalid_argument("bad boolean for " + key + ": " + v);
}

std::vector<int> parse_rows(const std::string& v) {
  std::vector<int> rows;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) rows.push_back(std::stoi(tok));
  }
  return rows;
}

}  // namespace

SearchConfig parse_search_config(std::istream& in) {
  SearchConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config lines are key=value: " + line);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "length") cfg.constraints.length = std::stoi(val);
    else if (key == "echo_pairing") cfg.constraints.echo_pairing = parse_bool(val, key);
    else if (key == "row_balance") cfg.constraints.row_balance = parse_bool(val, key);
    else if (key == "dipole_balance") cfg.constraints.dipole_balance = parse_bool(val, key);
    else if (key == "fix_first_frame") cfg.constraints.fix_first_frame = parse_bool(val, key);
    else if (key == "rules") cfg.rule_rows = parse_rows(val);
    else if (key == "tolerance") cfg.tolerance = std::stod(val);
    else if (key == "sampler") {
      if (val == "exhaustive") cfg.sampler = SearchConfig::Sampler::Exhaustive;
      else if (val == "random") cfg.sampler = SearchConfig::Sampler::Random;
      else throw std::invalid_argument("sampler is exhaustive|random");
    } else if (key == "seed") cfg.seed = std::stoull(val);
    else if (key == "budget") cfg.budget = std::stoull(val);
    else if (key == "symmetrization") {
      if (val == "none") cfg.symmetrization = SearchConfig::SymMode::None;
      else if (val == "antisymmetric") cfg.symmetrization = SearchConfig::SymMode::Antisymmetric;
      else if (val == "mirror") cfg.symmetrization = SearchConfig::SymMode::Mirror;
      else throw std::invalid_argument("symmetrization is none|antisymmetric|mirror");
    } else if (key == "metric") {
      if (val == "residual-norm") cfg.metric = SearchConfig::Metric::ResidualNorm;
      else if (val == "simulated-error-norm") cfg.metric = SearchConfig::Metric::SimulatedNorm;
      else throw std::invalid_argument("metric is residual-norm|simulated-error-norm");
    } else if (key == "tau") cfg.tau = std::stod(val);
    else if (key == "tau_p_ratio") cfg.tau_p_ratio = std::stod(val);
    else if (key == "threads") cfg.threads = std::stoi(val);
    else if (key == "table_constants") cfg.rule_options.table_constants = parse_bool(val, key);
    else throw std::invalid_argument("unknown config key: " + key);
  }
  validate_search_config(cfg);
  return cfg;
}

SearchConfig load_search_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_search_config(in);
}

}  // namespace frameseq
