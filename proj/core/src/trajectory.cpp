#include "frameseq/trajectory.hpp"

#include <cmath>

namespace frameseq {

std::string OperatorTermKind::label() const {
  switch (tag) {
    case Tag::Disorder:
      return std::string("disorder(") + component_name(axis1) + ")";
    case Tag::Heisenberg:
      return "heisenberg";
    case Tag::Ising:
      return std::string("ising(") + component_name(axis1) + ")";
    case Tag::IsingCross:
      return std::string("cross(") + component_name(axis1) + "," + component_name(axis2) + ")";
  }
  return "?";
}

std::vector<OperatorTermKind> all_term_kinds() {
  std::vector<OperatorTermKind> kinds;
  kinds.push_back(OperatorTermKind::heisenberg());
  for (int mu = 0; mu < 3; ++mu) kinds.push_back(OperatorTermKind::disorder(mu));
  for (int mu = 0; mu < 3; ++mu) kinds.push_back(OperatorTermKind::ising(mu));
  for (int nu = 0; nu < 3; ++nu)
    for (int rho = 0; rho < 3; ++rho)
      if (nu != rho) kinds.push_back(OperatorTermKind::ising_cross(nu, rho));
  return kinds;
}

double shape_value(Shape s, double theta) {
  switch (s) {
    case Shape::Const:
      return 1.0;
    case Shape::Sin:
      return std::sin(theta);
    case Shape::Cos:
      return std::cos(theta);
    case Shape::Sin2:
      return std::sin(theta) * std::sin(theta);
    case Shape::Cos2:
      return std::cos(theta) * std::cos(theta);
    case Shape::SinCos:
      return std::sin(theta) * std::cos(theta);
  }
  return 0.0;
}

double CoefficientTrajectory::total_duration() const {
  double t = 0.0;
  for (const Segment& s : segments) t += s.duration;
  return t;
}

double CoefficientTrajectory::value_at(double t) const {
  static constexpr double kHalfPi = 1.5707963267948966;
  double t0 = 0.0;
  for (const Segment& s : segments) {
    if (t < t0 + s.duration || &s == &segments.back()) {
      if (!s.is_window) return s.value;
      const double theta = kHalfPi * (t - t0) / s.duration;
      return s.value * shape_value(s.shape, theta);
    }
    t0 += s.duration;
  }
  return 0.0;
}

namespace {

// Coefficient of `kind` during the rotation taking frame a into frame b.
// Adjacent frames are perpendicular when tau_p > 0, so each kind has a single
// shape component per window.
Segment window_segment(const OperatorTermKind& kind, const Axis& a, const Axis& b,
                       double tau_p) {
  Segment seg;
  seg.is_window = true;
  seg.duration = tau_p;
  seg.shape = Shape::Const;
  seg.value = 0.0;
  switch (kind.tag) {
    case OperatorTermKind::Tag::Heisenberg:
      seg.shape = Shape::Const;
      seg.value = 1.0;
      break;
    case OperatorTermKind::Tag::Disorder:
      if (a.component() == kind.axis1) {
        seg.shape = Shape::Cos;
        seg.value = a.sign();
      } else if (b.component() == kind.axis1) {
        seg.shape = Shape::Sin;
        seg.value = b.sign();
      }
      break;
    case OperatorTermKind::Tag::Ising:
      if (a.component() == kind.axis1) {
        seg.shape = Shape::Cos2;
        seg.value = 1.0;
      } else if (b.component() == kind.axis1) {
        seg.shape = Shape::Sin2;
        seg.value = 1.0;
      }
      break;
    case OperatorTermKind::Tag::IsingCross:
      if (a.component() == kind.axis1 && b.component() == kind.axis2) {
        seg.shape = Shape::SinCos;
        seg.value = a.sign() * b.sign();
      }
      break;
  }
  return seg;
}

double flat_value(const OperatorTermKind& kind, const Axis& a) {
  switch (kind.tag) {
    case OperatorTermKind::Tag::Heisenberg:
      return 1.0;
    case OperatorTermKind::Tag::Disorder:
      return a.coefficient(kind.axis1);
    case OperatorTermKind::Tag::Ising:
      return std::abs(a.coefficient(kind.axis1));
    case OperatorTermKind::Tag::IsingCross:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

CoefficientTrajectory coefficient_trajectory(const PulseSequence& seq,
                                             const OperatorTermKind& kind) {
  seq.validate();
  CoefficientTrajectory traj;
  traj.kind = kind;
  const std::size_t n = seq.size();
  traj.segments.reserve(seq.tau_p > 0.0 ? 2 * n : n);
  for (std::size_t k = 0; k < n; ++k) {
    traj.segments.push_back(
        Segment{Shape::Const, flat_value(kind, seq.frame(k).axis), seq.frame(k).tau, false});
    if (seq.tau_p > 0.0) {
      traj.segments.push_back(
          window_segment(kind, seq.frame(k).axis, seq.frame((k + 1) % n).axis, seq.tau_p));
    }
  }
  return traj;
}

}  // namespace frameseq
