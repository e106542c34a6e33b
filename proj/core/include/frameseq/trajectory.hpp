#pragma once

#include <string>
#include <vector>

#include "frameseq/sequence.hpp"

namespace frameseq {

// How a term of the secular Hamiltonian transforms with the toggling frame:
//   Disorder(mu)      coefficient F_{mu,k}
//   Heisenberg        coefficient 1
//   Ising(mu)         coefficient F_{mu,k}^2 = |F_{mu,k}|
//   IsingCross(nu,rho) cross term generated during rotations from a nu frame
//                      into a rho frame, coefficient F_{nu,k} F_{rho,k+1}
//                      sin(theta) cos(theta); zero outside pulse windows.
struct OperatorTermKind {
  enum class Tag { Disorder, Heisenberg, Ising, IsingCross };

  Tag tag = Tag::Heisenberg;
  int axis1 = -1;  // mu for Disorder/Ising, nu for IsingCross
  int axis2 = -1;  // rho for IsingCross

  static OperatorTermKind disorder(int mu) { return {Tag::Disorder, mu, -1}; }
  static OperatorTermKind heisenberg() { return {Tag::Heisenberg, -1, -1}; }
  static OperatorTermKind ising(int mu) { return {Tag::Ising, mu, -1}; }
  static OperatorTermKind ising_cross(int nu, int rho) {
    if (nu == rho) throw std::invalid_argument("cross term needs two distinct axes");
    return {Tag::IsingCross, nu, rho};
  }

  bool operator==(const OperatorTermKind& o) const {
    return tag == o.tag && axis1 == o.axis1 && axis2 == o.axis2;
  }

  std::string label() const;
};

// All 13 kinds for spin-1/2 sequences: Heisenberg, 3 disorder, 3 Ising,
// 6 ordered cross terms.
std::vector<OperatorTermKind> all_term_kinds();

// Ramp shapes as functions of the rotation angle theta = t/r in [0, pi/2].
enum class Shape { Const, Sin, Cos, Sin2, Cos2, SinCos };

double shape_value(Shape s, double theta);

struct Segment {
  Shape shape = Shape::Const;
  double value = 0.0;  // flat value, or ramp amplitude
  double duration = 0.0;
  bool is_window = false;  // true for pulse windows (theta-parameterized)
};

// Piecewise coefficient c_alpha(t) over one Floquet cycle, laid out as
// [flat_1, window_1->2, flat_2, ..., flat_n, window_n->1]. With tau_p = 0 the
// windows are omitted. Segment lists built from the same sequence are
// aligned slot by slot across kinds.
struct CoefficientTrajectory {
  OperatorTermKind kind;
  std::vector<Segment> segments;

  double total_duration() const;
  double value_at(double t) const;  // pointwise c(t), piecewise evaluation
};

CoefficientTrajectory coefficient_trajectory(const PulseSequence& seq,
                                             const OperatorTermKind& kind);

}  // namespace frameseq
