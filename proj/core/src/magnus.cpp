#include "frameseq/magnus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace frameseq {

namespace {

constexpr double kPi = std::numbers::pi;

// int_0^{pi/2} shape(theta) dtheta
double shape_area(Shape s) {
  switch (s) {
    case Shape::Const:
      return kPi / 2.0;
    case Shape::Sin:
    case Shape::Cos:
      return 1.0;
    case Shape::Sin2:
    case Shape::Cos2:
      return kPi / 4.0;
    case Shape::SinCos:
      return 0.5;
  }
  return 0.0;
}

double segment_integral(const Segment& s) {
  if (s.duration == 0.0 || s.value == 0.0) return 0.0;
  if (!s.is_window) return s.value * s.duration;
  const double r = 2.0 * s.duration / kPi;  // dt = r dtheta
  return s.value * r * shape_area(s.shape);
}

// Ordered double integral within one slot, alpha at the later time.
double segment_ordered_pair(const Segment& a, const Segment& b) {
  if (a.value == 0.0 || b.value == 0.0 || a.duration == 0.0) return 0.0;
  if (!a.is_window) return a.value * b.value * a.duration * a.duration / 2.0;
  const double r = 2.0 * a.duration / kPi;
  return a.value * b.value * r * r * ordered_window_integral(a.shape, b.shape);
}

void check_aligned(const CoefficientTrajectory& a, const CoefficientTrajectory& b) {
  if (a.segments.size() != b.segments.size())
    throw std::invalid_argument("trajectories come from different sequences");
  for (std::size_t i = 0; i < a.segments.size(); ++i) {
    if (a.segments[i].duration != b.segments[i].duration ||
        a.segments[i].is_window != b.segments[i].is_window)
      throw std::invalid_argument("trajectory segmentations do not match");
  }
}

// Lower-triangle double integral I_ab = int_{t2<t1} c_a(t1) c_b(t2) over
// aligned slot lists; within-slot simultaneity handled exactly.
double ordered_integral_aligned(const std::vector<Segment>& a, const std::vector<Segment>& b,
                                double* za_out, double* zb_out) {
  double acc = 0.0, cum_b = 0.0, za = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ia = segment_integral(a[i]);
    acc += ia * cum_b + segment_ordered_pair(a[i], b[i]);
    cum_b += segment_integral(b[i]);
    za += ia;
  }
  if (za_out) *za_out = za;
  if (zb_out) *zb_out = cum_b;
  return acc;
}

}  // namespace

double ordered_window_integral(Shape f, Shape g) {
  // int_{0<th2<th1<pi/2} f(th1) g(th2); rows index f, columns index g in the
  // order Const, Sin, Cos, Sin2, Cos2, SinCos.
  static const double pi = kPi;
  static const double table[6][6] = {
      // f = Const
      {pi * pi / 8.0, pi / 2.0 - 1.0, 1.0, pi * pi / 16.0 - 0.25, pi * pi / 16.0 + 0.25,
       pi / 8.0},
      // f = Sin
      {1.0, 0.5, pi / 4.0, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0},
      // f = Cos
      {pi / 2.0 - 1.0, 1.0 - pi / 4.0, 0.5, pi / 4.0 - 2.0 / 3.0, pi / 4.0 - 1.0 / 3.0,
       1.0 / 6.0},
      // f = Sin2
      {pi * pi / 16.0 + 0.25, pi / 4.0 - 1.0 / 3.0, 2.0 / 3.0, pi * pi / 32.0,
       pi * pi / 32.0 + 0.25, 3.0 * pi / 32.0},
      // f = Cos2
      {pi * pi / 16.0 - 0.25, pi / 4.0 - 2.0 / 3.0, 1.0 / 3.0, pi * pi / 32.0 - 0.25,
       pi * pi / 32.0, pi / 32.0},
      // f = SinCos
      {pi / 8.0, 1.0 / 6.0, 1.0 / 3.0, pi / 32.0, 3.0 * pi / 32.0, 0.125},
  };
  return table[static_cast<int>(f)][static_cast<int>(g)];
}

double zeroth_integral(const CoefficientTrajectory& traj) {
  double acc = 0.0;
  for (const Segment& s : traj.segments) acc += segment_integral(s);
  return acc;
}

namespace {

// Places kind's component of window w_k into the cyclic layout: sine-phase
// shapes (and the frame-invariant Heisenberg coefficient) lead the following
// frame, cosine-phase shapes trail the preceding frame, cross terms sit
// between the two.
int cyclic_slot_for(Shape shape, std::size_t k, std::size_t n) {
  switch (shape) {
    case Shape::Sin:
    case Shape::Sin2:
    case Shape::Const:
      return static_cast<int>((4 * ((k + 1) % n)) + 0);
    case Shape::Cos:
    case Shape::Cos2:
      return static_cast<int>(4 * k + 2);
    case Shape::SinCos:
      return static_cast<int>(4 * k + 3);
  }
  return -1;
}

struct CyclicTrack {
  std::vector<Segment> slots;        // 4n
  std::vector<Segment> window_comp;  // n
  std::vector<int> window_pos;       // n
};

CyclicTrack build_cyclic_track(const PulseSequence& seq, const OperatorTermKind& kind) {
  const std::size_t n = seq.size();
  CyclicTrack t;
  t.slots.assign(4 * n, Segment{Shape::Const, 0.0, 0.0, false});
  t.window_comp.assign(n, Segment{Shape::Const, 0.0, 0.0, true});
  t.window_pos.assign(n, -1);

  const CoefficientTrajectory traj = coefficient_trajectory(seq, kind);
  const bool windows = seq.tau_p > 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Segment& flat = traj.segments[windows ? 2 * k : k];
    t.slots[4 * k + 1] = flat;
    if (!windows) continue;
    const Segment& win = traj.segments[2 * k + 1];
    t.window_comp[k] = win;
    if (win.value == 0.0) continue;
    const int pos = cyclic_slot_for(win.shape, k, n);
    t.window_pos[k] = pos;
    t.slots[static_cast<std::size_t>(pos)] = win;
  }
  return t;
}

// Orientation of a window component along the infinite pulse train: the
// trailing ramp of the preceding frame, then the rotation cross term, then
// the leading ramp of the following frame.
int chain_position(Shape shape) {
  switch (shape) {
    case Shape::Cos:
    case Shape::Cos2:
      return 0;
    case Shape::SinCos:
      return 1;
    case Shape::Sin:
    case Shape::Sin2:
    case Shape::Const:
      return 2;
  }
  return 0;
}

double cyclic_ordered_integral(const PulseSequence& seq, const OperatorTermKind& alpha,
                               const OperatorTermKind& beta, double* za_out, double* zb_out) {
  const CyclicTrack ta = build_cyclic_track(seq, alpha);
  const CyclicTrack tb = build_cyclic_track(seq, beta);
  double acc = ordered_integral_aligned(ta.slots, tb.slots, za_out, zb_out);

  // Components of the same window were treated as fully ordered along the
  // train; restore the exact simultaneous-window integral. The correction
  // follows the chain orientation, not the slot positions: at the wrap
  // junction the walk's cross-boundary product is the previous-cycle
  // pairing of the infinite train and is kept as is.
  const std::size_t n = seq.size();
  for (std::size_t w = 0; w < n; ++w) {
    const Segment& ca = ta.window_comp[w];
    const Segment& cb = tb.window_comp[w];
    if (ca.value == 0.0 || cb.value == 0.0) continue;
    const int cpa = chain_position(ca.shape);
    const int cpb = chain_position(cb.shape);
    if (cpa == cpb) continue;  // same slot, already exact
    const double exact = segment_ordered_pair(ca, cb);
    const double listed =
        cpa > cpb ? segment_integral(ca) * segment_integral(cb) : 0.0;
    acc += exact - listed;
  }
  return acc;
}

}  // namespace

TermPairIntegral first_order_integral(const PulseSequence& seq, const OperatorTermKind& alpha,
                                      const OperatorTermKind& beta, BoundaryMode mode) {
  seq.validate();
  TermPairIntegral out{alpha, beta, 0.0};
  double za = 0.0, zb = 0.0, acc = 0.0;
  if (mode == BoundaryMode::Exact || seq.tau_p == 0.0) {
    const CoefficientTrajectory ta = coefficient_trajectory(seq, alpha);
    const CoefficientTrajectory tb = coefficient_trajectory(seq, beta);
    acc = ordered_integral_aligned(ta.segments, tb.segments, &za, &zb);
  } else {
    acc = cyclic_ordered_integral(seq, alpha, beta, &za, &zb);
  }
  out.value = acc - 0.5 * za * zb;
  return out;
}

TermTripleIntegral second_order_disorder_integral(const PulseSequence& seq,
                                                  const OperatorTermKind& alpha,
                                                  const OperatorTermKind& beta,
                                                  const OperatorTermKind& gamma) {
  for (const OperatorTermKind* k : {&alpha, &beta, &gamma}) {
    if (k->tag != OperatorTermKind::Tag::Disorder)
      throw std::invalid_argument("second-order closed form covers disorder terms only");
  }
  seq.validate();

  const double ext = 4.0 * seq.tau_p / kPi;
  double acc = 0.0, c1 = 0.0, cum_b = 0.0, cum_g = 0.0, za = 0.0;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const Axis ax = seq.frame(k).axis;
    const double tau = seq.frame(k).tau + ext;
    const double a = ax.coefficient(alpha.axis1);
    const double b = ax.coefficient(beta.axis1);
    const double g = ax.coefficient(gamma.axis1);
    const double slope = b * cum_g - g * cum_b;  // c1 grows linearly in-frame
    acc += a * (c1 * tau + slope * tau * tau / 2.0);
    c1 += slope * tau;
    cum_b += b * tau;
    cum_g += g * tau;
    za += a * tau;
  }
  return TermTripleIntegral{alpha, beta, gamma, 2.0 * acc - c1 * za};
}

// ----------------------------------------------------------------------
// Brute-force quadrature oracles
// ----------------------------------------------------------------------

namespace {

struct GridWalker {
  const CoefficientTrajectory* traj;
  double value(std::size_t seg, int step, int res) const {
    const Segment& s = traj->segments[seg];
    if (!s.is_window) return s.value;
    const double theta = (kPi / 2.0) * (step + 0.5) / res;
    return s.value * shape_value(s.shape, theta);
  }
};

}  // namespace

double brute_force_first_order(const CoefficientTrajectory& a, const CoefficientTrajectory& b,
                               int resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
  check_aligned(a, b);
  GridWalker wa{&a}, wb{&b};
  double acc = 0.0, cum_b = 0.0, za = 0.0, zb = 0.0;
  for (std::size_t seg = 0; seg < a.segments.size(); ++seg) {
    const double dur = a.segments[seg].duration;
    if (dur == 0.0) continue;
    const double h = dur / resolution;
    for (int i = 0; i < resolution; ++i) {
      const double va = wa.value(seg, i, resolution);
      const double vb = wb.value(seg, i, resolution);
      acc += va * h * (cum_b + vb * h / 2.0);
      cum_b += vb * h;
      za += va * h;
    }
  }
  zb = cum_b;
  return acc - 0.5 * za * zb;
}

double brute_force_second_order(const CoefficientTrajectory& a, const CoefficientTrajectory& b,
                                const CoefficientTrajectory& c, int resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
  check_aligned(a, b);
  check_aligned(a, c);
  GridWalker wa{&a}, wb{&b}, wc{&c};
  double acc = 0.0, c1 = 0.0, cum_b = 0.0, cum_g = 0.0, za = 0.0;
  for (std::size_t seg = 0; seg < a.segments.size(); ++seg) {
    const double dur = a.segments[seg].duration;
    if (dur == 0.0) continue;
    const double h = dur / resolution;
    for (int i = 0; i < resolution; ++i) {
      const double va = wa.value(seg, i, resolution);
      const double vb = wb.value(seg, i, resolution);
      const double vc = wc.value(seg, i, resolution);
      const double dc1 = vb * (cum_g + vc * h / 2.0) - vc * (cum_b + vb * h / 2.0);
      acc += va * h * (c1 + dc1 * h / 2.0);
      c1 += dc1 * h;
      cum_b += vb * h;
      cum_g += vc * h;
      za += va * h;
    }
  }
  return 2.0 * acc - c1 * za;
}

double brute_force_integral(const std::vector<CoefficientTrajectory>& trajs, int order,
                            int resolution) {
  if (order == 1) {
    if (trajs.size() != 2) throw std::invalid_argument("order 1 needs two trajectories");
    return brute_force_first_order(trajs[0], trajs[1], resolution);
  }
  if (order == 2) {
    if (trajs.size() != 3) throw std::invalid_argument("order 2 needs three trajectories");
    return brute_force_second_order(trajs[0], trajs[1], trajs[2], resolution);
  }
  throw std::invalid_argument("order must be 1 or 2");
}

}  // namespace frameseq
