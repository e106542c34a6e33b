#include <doctest.h>

#include <cmath>
#include <numbers>

#include "frameseq/trajectory.hpp"
#include "test_helpers.hpp"

using namespace frameseq;
using frameseq::testing::ax;
using frameseq::testing::axes;

TEST_CASE("echo disorder trajectory is two flats") {
  const PulseSequence echo = make_sequence(axes({"+z", "-z"}), 1.0);
  const auto traj = coefficient_trajectory(echo, OperatorTermKind::disorder(2));
  REQUIRE(traj.segments.size() == 2);
  CHECK(traj.segments[0].value == 1.0);
  CHECK(traj.segments[1].value == -1.0);
  CHECK(!traj.segments[0].is_window);
  CHECK(traj.total_duration() == doctest::Approx(2.0));
}

TEST_CASE("heisenberg coefficient is constantly one") {
  std::mt19937 rng(5);
  for (int i = 0; i < 10; ++i) {
    const PulseSequence seq = frameseq::testing::random_sequence(rng, 3 + rng() % 6, 0.1);
    const auto traj = coefficient_trajectory(seq, OperatorTermKind::heisenberg());
    for (const Segment& s : traj.segments) {
      CHECK(s.value == 1.0);
      CHECK(s.shape == Shape::Const);
    }
    CHECK(traj.total_duration() == doctest::Approx(seq.period()));
  }
}

TEST_CASE("cross term appears only inside the matching pulse window") {
  const PulseSequence seq = make_sequence(axes({"+z", "+x"}), 1.0, 0.2);
  const auto traj = coefficient_trajectory(seq, OperatorTermKind::ising_cross(2, 0));
  REQUIRE(traj.segments.size() == 4);  // flat, window, flat, window
  CHECK(traj.segments[0].value == 0.0);
  CHECK(traj.segments[1].shape == Shape::SinCos);
  CHECK(traj.segments[1].value == 1.0);  // F_{z,1} F_{x,2} = +1
  CHECK(traj.segments[2].value == 0.0);
  // the wrap window rotates x back into z, so (z,x) is inactive there
  CHECK(traj.segments[3].value == 0.0);

  const auto reverse = coefficient_trajectory(seq, OperatorTermKind::ising_cross(0, 2));
  CHECK(reverse.segments[1].value == 0.0);
  CHECK(reverse.segments[3].shape == Shape::SinCos);
  CHECK(reverse.segments[3].value == 1.0);
}

TEST_CASE("ising flats are squares of disorder flats") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const PulseSequence seq =
        frameseq::testing::random_sequence(rng, 2 + rng() % 10, (trial % 2) ? 0.07 : 0.0);
    for (int mu = 0; mu < 3; ++mu) {
      const auto dis = coefficient_trajectory(seq, OperatorTermKind::disorder(mu));
      const auto isi = coefficient_trajectory(seq, OperatorTermKind::ising(mu));
      REQUIRE(dis.segments.size() == isi.segments.size());
      for (std::size_t s = 0; s < dis.segments.size(); ++s) {
        if (dis.segments[s].is_window) continue;
        CHECK(isi.segments[s].value ==
              doctest::Approx(dis.segments[s].value * dis.segments[s].value));
      }
    }
  }
}

TEST_CASE("every kind's trajectory spans the full period") {
  std::mt19937 rng(23);
  const PulseSequence seq = frameseq::testing::random_sequence(rng, 6, 0.15);
  for (const OperatorTermKind& kind : all_term_kinds()) {
    CHECK(coefficient_trajectory(seq, kind).total_duration() ==
          doctest::Approx(seq.period()).epsilon(1e-12));
  }
}

TEST_CASE("pointwise evaluation matches segment data") {
  const PulseSequence seq = make_sequence(axes({"+z", "+x"}), 1.0, 0.2);
  const auto traj = coefficient_trajectory(seq, OperatorTermKind::disorder(2));
  CHECK(traj.value_at(0.5) == doctest::Approx(1.0));
  // first window: cos ramp away from +z
  CHECK(traj.value_at(1.0 + 0.1) == doctest::Approx(std::cos(0.25 * std::numbers::pi)));
  CHECK(traj.value_at(1.7) == doctest::Approx(0.0));
}
