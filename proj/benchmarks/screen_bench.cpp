// Screening throughput: candidates per second through the rule set
// {zeroth, 1, 2, 4} at representative frame counts.

#include <benchmark/benchmark.h>

#include "frameseq/rng.hpp"
#include "frameseq/rules.hpp"
#include "frameseq/search.hpp"

namespace {

frameseq::SearchConfig screening_config(int length) {
  frameseq::SearchConfig cfg;
  cfg.constraints.length = length;
  cfg.constraints.echo_pairing = true;
  cfg.constraints.row_balance = true;
  cfg.constraints.dipole_balance = (length / 2) % 6 == 0;
  cfg.rule_rows = {1, 2, 4};
  cfg.sampler = frameseq::SearchConfig::Sampler::Random;
  cfg.seed = 7;
  return cfg;
}

void bm_screen_candidates(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  frameseq::SearchConfig cfg = screening_config(length);
  const frameseq::CandidateSpace space(cfg.constraints, false);

  std::uint64_t draw = 0;
  std::uint64_t screened = 0;
  for (auto _ : state) {
    frameseq::CounterRng rng(cfg.seed, draw++);
    const auto axes = space.decode(rng.next_below(space.size()));
    if (!axes) continue;
    const auto seq = frameseq::make_sequence(*axes, 1.0, 0.0);
    bool pass = true;
    for (int mu = 0; mu < 3 && pass; ++mu) {
      for (int nu = 0; nu < 3 && pass; ++nu) {
        if (mu == nu) continue;
        if (std::abs(frameseq::rule_row1_disorder_disorder(seq, mu, nu).main) > 1e-9 ||
            std::abs(frameseq::rule_row2_disorder_ising(seq, mu, nu).main) > 1e-9)
          pass = false;
      }
      if (pass && std::abs(frameseq::rule_row4_disorder_heisenberg(seq, mu)) > 1e-9)
        pass = false;
    }
    benchmark::DoNotOptimize(pass);
    ++screened;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(screened));
}

}  // namespace

BENCHMARK(bm_screen_candidates)->Arg(12)->Arg(24)->Arg(48);
