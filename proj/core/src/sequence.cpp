#include "frameseq/sequence.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace frameseq {

double PulseSequence::free_time() const {
  double t = 0.0;
  for (const Frame& f : frame_matrix.frames) t += f.tau;
  return t;
}

double PulseSequence::period() const {
  return free_time() + static_cast<double>(size()) * tau_p;
}

void PulseSequence::validate() const {
  if (tau_p < 0.0) throw std::invalid_argument("tau_p must be >= 0");
  const std::size_t n = size();
  for (std::size_t k = 0; k < n; ++k) {
    if (frame(k).tau < 0.0) throw std::invalid_argument("frame duration must be >= 0");
  }
  if (tau_p > 0.0) {
    for (std::size_t k = 0; k < n; ++k) {
      const Axis a = frame(k).axis;
      const Axis b = frame((k + 1) % n).axis;
      if (a == b)
        throw std::invalid_argument("adjacent frames share axis " + a.label() +
                                    "; no pi/2 rotation connects them (tau_p > 0)");
      if (a.is_antipodal(b))
        throw std::invalid_argument("adjacent frames " + a.label() + " -> " + b.label() +
                                    " need a pi pulse; split it into two pi/2 rotations with "
                                    "an intermediate pulse frame (tau_p > 0)");
    }
  }
}

PulseSequence make_sequence(const std::vector<Axis>& axes, const std::vector<double>& taus,
                            double tau_p) {
  if (axes.size() != taus.size()) throw std::invalid_argument("axes/taus size mismatch");
  PulseSequence seq;
  seq.tau_p = tau_p;
  seq.frame_matrix.frames.reserve(axes.size());
  for (std::size_t k = 0; k < axes.size(); ++k) {
    seq.frame_matrix.frames.push_back(Frame{axes[k], taus[k], taus[k] == 0.0});
  }
  seq.validate();
  return seq;
}

PulseSequence make_sequence(const std::vector<Axis>& axes, double tau, double tau_p) {
  return make_sequence(axes, std::vector<double>(axes.size(), tau), tau_p);
}

// ----------------------------------------------------------------------
// Parsing
// ----------------------------------------------------------------------

namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return true;
  }
  return false;
}

double parse_double(const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(ParseErrorKind::BadNumber,
                     std::string("cannot parse ") + what + " from '" + tok + "'");
  }
}

}  // namespace

PulseSequence parse_frame_matrix(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line))
    throw ParseError(ParseErrorKind::BadHeader, "missing header line");

  std::istringstream hdr(line);
  std::string kw_frames, kw_taup, n_tok, taup_tok;
  hdr >> kw_frames >> n_tok >> kw_taup >> taup_tok;
  if (kw_frames != "frames" || kw_taup != "tau_p" || n_tok.empty() || taup_tok.empty())
    throw ParseError(ParseErrorKind::BadHeader, "header must be 'frames <n> tau_p <seconds>'");

  long n = 0;
  try {
    n = std::stol(n_tok);
  } catch (const std::exception&) {
    throw ParseError(ParseErrorKind::BadHeader, "bad frame count '" + n_tok + "'");
  }
  if (n < 0) throw ParseError(ParseErrorKind::BadHeader, "frame count must be >= 0");

  PulseSequence seq;
  seq.tau_p = parse_double(taup_tok, "tau_p");
  if (seq.tau_p < 0.0)
    throw ParseError(ParseErrorKind::NegativeDuration, "tau_p must be >= 0");

  for (long k = 0; k < n; ++k) {
    if (!next_content_line(in, line))
      throw ParseError(ParseErrorKind::BadRowCount,
                       "expected " + std::to_string(n) + " frame rows, got " + std::to_string(k));
    std::istringstream row(line);
    std::string axis_tok, tau_tok, flag_tok;
    row >> axis_tok >> tau_tok >> flag_tok;
    if (axis_tok.empty() || tau_tok.empty() || flag_tok.empty())
      throw ParseError(ParseErrorKind::BadRowCount,
                       "frame row needs 'axis tau pulse_frame': '" + line + "'");

    const auto axis = Axis::parse(axis_tok);
    if (!axis)
      throw ParseError(ParseErrorKind::BadAxis,
                       "axis must be one of +x,+y,+z,-x,-y,-z: '" + axis_tok + "'");
    const double tau = parse_double(tau_tok, "tau");
    if (tau < 0.0)
      throw ParseError(ParseErrorKind::NegativeDuration,
                       "negative duration in frame " + std::to_string(k + 1));
    if (flag_tok != "0" && flag_tok != "1")
      throw ParseError(ParseErrorKind::BadNumber, "pulse_frame flag must be 0 or 1");

    seq.frame_matrix.frames.push_back(Frame{*axis, tau, flag_tok == "1"});
  }
  if (next_content_line(in, line))
    throw ParseError(ParseErrorKind::BadRowCount, "trailing content after " +
                                                      std::to_string(n) + " frame rows");

  try {
    seq.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(ParseErrorKind::AdjacentAxis, e.what());
  }
  return seq;
}

PulseSequence parse_frame_matrix_text(const std::string& text) {
  std::istringstream in(text);
  return parse_frame_matrix(in);
}

PulseSequence load_frame_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open frame-matrix file: " + path);
  return parse_frame_matrix(in);
}

std::string format_frame_matrix(const PulseSequence& seq) {
  char buf[96];
  std::string out;
  std::snprintf(buf, sizeof buf, "frames %zu tau_p %.17g\n", seq.size(), seq.tau_p);
  out += buf;
  for (const Frame& f : seq.frame_matrix.frames) {
    std::snprintf(buf, sizeof buf, "%s %.17g %d\n", f.axis.label().c_str(), f.tau,
                  f.pulse_frame ? 1 : 0);
    out += buf;
  }
  return out;
}

void save_frame_matrix(const PulseSequence& seq, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write frame-matrix file: " + path);
  out << format_frame_matrix(seq);
}

// ----------------------------------------------------------------------
// Pulse-train walks
// ----------------------------------------------------------------------

namespace {

// Integer 3x3 rotation matrices acting on axis vectors.
struct IntMat {
  std::array<std::array<int, 3>, 3> m;

  static IntMat identity() {
    return IntMat{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  }

  std::array<int, 3> apply(const std::array<int, 3>& v) const {
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i] += m[i][j] * v[j];
    return r;
  }

  IntMat mul(const IntMat& o) const {
    IntMat r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int s = 0;
        for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }
};

// Right-handed rotation by -pi/2 about +x / +y (the inverse vector rotation
// of a +pi/2 pulse); negative-axis pulses use the transpose.
IntMat inv_rotation(const Axis& about) {
  // R_x(-pi/2): y -> -z, z -> +y
  static const IntMat rx_inv{{{{1, 0, 0}, {0, 0, 1}, {0, -1, 0}}}};
  // R_y(-pi/2): x -> +z, z -> -x
  static const IntMat ry_inv{{{{0, 0, -1}, {0, 1, 0}, {1, 0, 0}}}};
  // rotations by +pi/2 (inverses of the above)
  static const IntMat rx_fwd{{{{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}}};
  static const IntMat ry_fwd{{{{0, 0, 1}, {0, 1, 0}, {-1, 0, 0}}}};

  if (about.component() == 0) return about.sign() > 0 ? rx_inv : rx_fwd;
  if (about.component() == 1) return about.sign() > 0 ? ry_inv : ry_fwd;
  throw std::invalid_argument("pulses rotate about +x,-x,+y,-y only");
}

Axis axis_from_vector(const std::array<int, 3>& v) {
  for (int mu = 0; mu < 3; ++mu) {
    if (v[mu] == 1) return Axis(mu + 1);
    if (v[mu] == -1) return Axis(mu + 4);
  }
  throw std::logic_error("axis vector is not a signed unit vector");
}

}  // namespace

FrameMatrix frames_from_pulses(const std::vector<Pulse>& pulses,
                               const std::vector<double>& delays) {
  if (pulses.size() != delays.size())
    throw std::invalid_argument("delays must have the same length as pulses");
  for (const Pulse& p : pulses) {
    if (p.about.component() == 2)
      throw std::invalid_argument("pulses rotate about +x,-x,+y,-y only");
  }

  FrameMatrix walk;
  IntMat acc = IntMat::identity();  // accumulated inverse vector rotation
  walk.frames.push_back(Frame{Axis::plus_z(), pulses.empty() ? 0.0 : delays[0],
                              pulses.empty() ? true : delays[0] == 0.0});
  for (std::size_t k = 0; k < pulses.size(); ++k) {
    acc = acc.mul(inv_rotation(pulses[k].about));
    const Axis a = axis_from_vector(acc.apply({0, 0, 1}));
    const double tau = (k + 1 < delays.size()) ? delays[k + 1] : 0.0;
    walk.frames.push_back(Frame{a, tau, tau == 0.0});
  }
  return walk;
}

std::vector<Pulse> pulses_from_frames(const FrameMatrix& walk) {
  std::vector<Pulse> pulses;
  if (walk.size() < 2) return pulses;

  IntMat acc = IntMat::identity();
  if (walk.frames.front().axis != Axis::plus_z())
    throw std::invalid_argument("frame walk must start at +z");

  for (std::size_t k = 1; k < walk.size(); ++k) {
    const Axis prev = walk.frames[k - 1].axis;
    const Axis next = walk.frames[k].axis;
    if (!prev.is_perpendicular(next))
      throw std::invalid_argument("frames " + prev.label() + " -> " + next.label() +
                                  " are not connected by a single pi/2 pulse");

    // Solve R_pulse^{-1} z = acc^{-1} F_k, i.e. v = acc^T F_k for orthogonal acc.
    const auto f = next.unit_vector();
    std::array<int, 3> fi{static_cast<int>(f[0]), static_cast<int>(f[1]),
                          static_cast<int>(f[2])};
    std::array<int, 3> v{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v[i] += acc.m[j][i] * fi[j];  // transpose apply

    Axis pulse_axis = Axis::plus_x();
    if (v[1] == 1) pulse_axis = Axis::plus_x();        // R_x(-pi/2) z = +y
    else if (v[1] == -1) pulse_axis = Axis::minus_x();
    else if (v[0] == -1) pulse_axis = Axis::plus_y();  // R_y(-pi/2) z = -x
    else if (v[0] == 1) pulse_axis = Axis::minus_y();
    else throw std::logic_error("no pi/2 pulse connects the frame pair");

    pulses.push_back(Pulse{pulse_axis});
    acc = acc.mul(inv_rotation(pulse_axis));
  }
  return pulses;
}

PulseSequence fold_cyclic(const FrameMatrix& walk, double tau_p) {
  if (walk.size() < 2 || walk.frames.front().axis != walk.frames.back().axis)
    throw std::invalid_argument("walk does not close onto its first frame");
  PulseSequence seq;
  seq.tau_p = tau_p;
  seq.frame_matrix.frames.assign(walk.frames.begin(), walk.frames.end() - 1);
  seq.frame_matrix.frames.front().tau += walk.frames.back().tau;
  seq.validate();
  return seq;
}

// ----------------------------------------------------------------------
// Symmetrization / concatenation
// ----------------------------------------------------------------------

PulseSequence apply_symmetrization(const PulseSequence& seq, Symmetrization mode) {
  PulseSequence out = seq;
  const auto& src = seq.frame_matrix.frames;
  out.frame_matrix.frames.reserve(2 * src.size());
  for (auto it = src.rbegin(); it != src.rend(); ++it) {
    Frame f = *it;
    if (mode == Symmetrization::Antisymmetric) f.axis = f.axis.negated();
    out.frame_matrix.frames.push_back(f);
  }
  if (mode == Symmetrization::Mirror && !src.empty() && seq.tau_p > 0.0)
    throw std::invalid_argument(
        "mirror symmetrization repeats the junction frame, which conflicts with "
        "pi/2-pulse adjacency at tau_p > 0");
  out.validate();
  return out;
}

PulseSequence concatenate(const PulseSequence& a, const PulseSequence& b) {
  if (a.tau_p != b.tau_p) throw std::invalid_argument("tau_p mismatch in concatenation");
  PulseSequence out = a;
  out.frame_matrix.frames.insert(out.frame_matrix.frames.end(), b.frame_matrix.frames.begin(),
                                 b.frame_matrix.frames.end());
  out.validate();
  return out;
}

}  // namespace frameseq
