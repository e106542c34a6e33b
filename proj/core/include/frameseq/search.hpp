#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>

#include "frameseq/rules.hpp"

namespace frameseq {

// Structural constraints imposed by construction in the candidate
// enumerator. Frames are enumerated over the six signed axes with the first
// frame fixed to +z (configurable); consecutive frames are distinct
// (perpendicular when screening with finite pulses). Echo pairing groups
// frames into adjacent +/- pairs on one axis; row balance equalizes frame
// counts per axis; dipole balance equalizes the +- and -+ echo orderings
// per axis.
struct StructureConstraints {
  int length = 2;  // number of free-evolution frames
  bool echo_pairing = false;
  bool row_balance = false;
  bool dipole_balance = false;
  bool fix_first_frame = true;
};

struct SearchConfig {
  enum class Sampler { Exhaustive, Random };
  enum class Metric { ResidualNorm, SimulatedNorm };
  enum class SymMode { None, Antisymmetric, Mirror };

  StructureConstraints constraints;
  std::vector<int> rule_rows = {0, 1, 2, 4};
  double tolerance = 1e-9;
  Sampler sampler = Sampler::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1;  // random draws
  SymMode symmetrization = SymMode::None;
  Metric metric = Metric::ResidualNorm;
  double tau = 1.0;
  double tau_p_ratio = 0.0;
  int threads = 1;
  RuleOptions rule_options;
};

// Throws std::invalid_argument when the constraint set admits no candidate
// (wrong divisibility, dipole balance without echo pairing, finite-pulse
// screening of antipodal echo junctions).
void validate_search_config(const SearchConfig& config);

// key=value configuration file (comments with '#').
SearchConfig parse_search_config(std::istream& in);
SearchConfig load_search_config(const std::string& path);

// The enumerable index space behind a constraint set: a product of per-pair
// (or per-frame) choices; decode() rejects indices violating balance or
// adjacency so that every admissible sequence appears for exactly one index.
class CandidateSpace {
 public:
  CandidateSpace(const StructureConstraints& constraints, bool perpendicular_adjacency);

  std::uint64_t size() const { return size_; }
  std::optional<std::vector<Axis>> decode(std::uint64_t index) const;

 private:
  StructureConstraints c_;
  bool perp_ = false;
  std::uint64_t size_ = 0;
  std::uint64_t sign_states_ = 0;  // echo mode: 2^(free sign slots)
};

// Streams admissible candidates (raw, before symmetrization) to the sink;
// stops early if the sink returns false. Exhaustive mode walks the whole
// index space in order, random mode draws `budget` indices keyed by
// (seed, draw) and skips rejected ones.
void enumerate_candidates(const SearchConfig& config,
                          const std::function<bool(std::uint64_t id, const PulseSequence&)>& sink);

struct ScreenHit {
  std::uint64_t id = 0;
  PulseSequence sequence;  // symmetrized form that was screened
  RuleReport report;
};

// Screens all candidates against the configured rule rows; returns passing
// candidates with full reports, in candidate-index order regardless of the
// worker-thread count.
std::vector<ScreenHit> screen(const SearchConfig& config);

struct RankedCandidate {
  std::size_t hit_index = 0;
  std::uint64_t id = 0;
  double metric = 0.0;
  double residual_norm = 0.0;
};

double residual_norm(const RuleReport& report);

// Orders survivors by the configured metric; the simulated metric is the
// two-spin effective-Hamiltonian error norm (ideal Heisenberg part
// subtracted) at the given parameters. Ties break on the lexicographic
// frame encoding.
struct HamiltonianParams;
std::vector<RankedCandidate> rank_candidates(const std::vector<ScreenHit>& hits,
                                             const SearchConfig& config,
                                             const HamiltonianParams* params);

// One frame-matrix file per survivor (seq_<rank>.fm) plus an index file
// `index.txt` with lines `rank id metric residual_norm`.
void write_catalog(const std::string& directory, const std::vector<ScreenHit>& hits,
                   const std::vector<RankedCandidate>& ranking);

}  // namespace frameseq
