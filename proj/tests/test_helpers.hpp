#pragma once

#include <random>
#include <vector>

#include "frameseq/sequence.hpp"

namespace frameseq::testing {

inline Axis ax(const char* label) {
  auto a = Axis::parse(label);
  if (!a) throw std::invalid_argument("bad axis label in test");
  return *a;
}

inline std::vector<Axis> axes(std::initializer_list<const char*> labels) {
  std::vector<Axis> out;
  for (const char* l : labels) out.push_back(ax(l));
  return out;
}

// Random cyclic frame walk. With tau_p > 0 all junctions (wrap included) are
// perpendicular; otherwise merely distinct.
inline PulseSequence random_sequence(std::mt19937& rng, std::size_t n, double tau_p,
                                     bool mixed_tau = true) {
  std::uniform_real_distribution<double> tau_dist(0.5, 2.0);
  const bool perp = tau_p > 0.0;
  std::vector<Axis> frames;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    frames.clear();
    frames.push_back(Axis::plus_z());
    bool ok = true;
    for (std::size_t k = 1; k < n; ++k) {
      const Axis prev = frames.back();
      Axis next = prev;
      for (int tries = 0; tries < 100; ++tries) {
        next = Axis(static_cast<int>(rng() % 6) + 1);
        if (perp ? next.is_perpendicular(prev) : next != prev) break;
      }
      if (!(perp ? next.is_perpendicular(prev) : next != prev)) {
        ok = false;
        break;
      }
      frames.push_back(next);
    }
    if (!ok) continue;
    const Axis first = frames.front();
    const Axis last = frames.back();
    if (n > 1 && !(perp ? last.is_perpendicular(first) : last != first)) continue;

    std::vector<double> taus;
    for (std::size_t k = 0; k < n; ++k) taus.push_back(mixed_tau ? tau_dist(rng) : 1.0);
    return make_sequence(frames, taus, tau_p);
  }
  throw std::runtime_error("failed to draw a random sequence");
}

}  // namespace frameseq::testing
