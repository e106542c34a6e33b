// Closed-form pair integrals and rule evaluation cost per sequence length.

#include <benchmark/benchmark.h>

#include <random>

#include "frameseq/magnus.hpp"
#include "frameseq/rules.hpp"

namespace {

frameseq::PulseSequence chain(std::size_t n, double tau_p) {
  std::mt19937 rng(11);
  std::vector<frameseq::Axis> axes;
  axes.push_back(frameseq::Axis::plus_z());
  while (axes.size() < n) {
    const frameseq::Axis next(static_cast<int>(rng() % 6) + 1);
    if (tau_p > 0.0 ? next.is_perpendicular(axes.back()) : next != axes.back())
      axes.push_back(next);
  }
  if (tau_p > 0.0 && !axes.back().is_perpendicular(axes.front())) return chain(n + 1, tau_p);
  return frameseq::make_sequence(axes, 1.0, tau_p);
}

void bm_first_order_pair(benchmark::State& state) {
  const auto seq = chain(static_cast<std::size_t>(state.range(0)), 0.1);
  const auto a = frameseq::OperatorTermKind::disorder(2);
  const auto b = frameseq::OperatorTermKind::ising(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frameseq::first_order_integral(seq, a, b).value);
  }
}

void bm_full_ruleset(benchmark::State& state) {
  const auto seq = chain(static_cast<std::size_t>(state.range(0)), 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        frameseq::evaluate_ruleset(seq, {0, 1, 2, 3, 4, 5, 7}, 1e-9).rows.size());
  }
}

}  // namespace

BENCHMARK(bm_first_order_pair)->Arg(12)->Arg(48)->Arg(192);
BENCHMARK(bm_full_ruleset)->Arg(12)->Arg(48);
