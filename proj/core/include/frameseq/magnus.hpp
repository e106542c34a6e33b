#pragma once

#include "frameseq/trajectory.hpp"

namespace frameseq {

// Antisymmetrized first-order pair integral, reported for an ordered kind
// pair after combining both orderings:
//   value = int_0^T c_a(t) cumc_b(t) dt - 1/2 cumc_a(T) cumc_b(T)
// i.e. half of (I_ab - I_ba) with I_ab the lower-triangle double integral.
struct TermPairIntegral {
  OperatorTermKind alpha;
  OperatorTermKind beta;
  double value = 0.0;  // time^2
};

// Second-order triple integral in the regrouped form
//   value = 2 int_0^T c_a(t) c1_bg(0,t) dt - c1_bg(0,T) int_0^T c_a(t) dt
// where c1_bg(0,t) is the running antisymmetrized pair integral of (b,g)
// with b at the later time counted positive.
struct TermTripleIntegral {
  OperatorTermKind alpha;
  OperatorTermKind beta;
  OperatorTermKind gamma;
  double value = 0.0;  // time^3
};

// First and last frames of a single Floquet cycle are not equivalent to the
// bulk. Cyclic evaluates every junction symmetrically (the infinite-train
// bookkeeping behind the rule table); Exact integrates the literal one-cycle
// timeline, wrap window last.
enum class BoundaryMode { Cyclic, Exact };

// exact integral of c_alpha over one cycle; flat parts summed, ramps
// integrated analytically (int sin = int cos = 2 tau_p/pi, int sin^2 =
// int cos^2 = tau_p/2, int sin cos = tau_p/pi).
double zeroth_integral(const CoefficientTrajectory& traj);

TermPairIntegral first_order_integral(const PulseSequence& seq, const OperatorTermKind& alpha,
                                      const OperatorTermKind& beta,
                                      BoundaryMode mode = BoundaryMode::Cyclic);

// Closed-form second-order integral for disorder-only kinds. Exact at
// tau_p = 0; with finite pulses every duration is lengthened to
// tau_k + (4/pi) tau_p (leading-order frame extension, no window terms).
TermTripleIntegral second_order_disorder_integral(const PulseSequence& seq,
                                                  const OperatorTermKind& alpha,
                                                  const OperatorTermKind& beta,
                                                  const OperatorTermKind& gamma);

// Composite-quadrature oracle for the same integrals, evaluated on the
// literal timeline; converges as O(resolution^-2) in steps per segment.
double brute_force_first_order(const CoefficientTrajectory& a, const CoefficientTrajectory& b,
                               int resolution);
double brute_force_second_order(const CoefficientTrajectory& a, const CoefficientTrajectory& b,
                                const CoefficientTrajectory& c, int resolution);

// order 1 takes 2 trajectories, order 2 takes 3; resolution >= 100.
double brute_force_integral(const std::vector<CoefficientTrajectory>& trajs, int order,
                            int resolution);

// Exact ordered-pair ramp integrals over one pulse window,
// int_{0<t2<t1<pi/2} f(t1) g(t2), used by the analytic path and exposed for
// verification.
double ordered_window_integral(Shape f, Shape g);

}  // namespace frameseq
