#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "frameseq/axis.hpp"

namespace frameseq {

// One free-evolution frame: axis of the toggled S^z operator, its duration,
// and a marker for zero-duration intermediate frames inside composite (pi)
// rotations.
struct Frame {
  Axis axis;
  double tau = 0.0;
  bool pulse_frame = false;
};

struct FrameMatrix {
  std::vector<Frame> frames;

  std::size_t size() const { return frames.size(); }
  bool empty() const { return frames.empty(); }
  const Frame& operator[](std::size_t k) const { return frames[k]; }

  // F_{mu,k}
  double coefficient(int mu, std::size_t k) const { return frames[k].axis.coefficient(mu); }
};

// A frame matrix plus the global pi/2 pulse duration. The sequence is one
// Floquet cycle: the junction after the last frame wraps to the first, so a
// sequence of n frames carries n pi/2 rotations when tau_p > 0.
struct PulseSequence {
  FrameMatrix frame_matrix;
  double tau_p = 0.0;

  std::size_t size() const { return frame_matrix.size(); }
  const Frame& frame(std::size_t k) const { return frame_matrix.frames[k]; }

  double free_time() const;
  double period() const;  // T = sum tau_k + n * tau_p

  // Throws std::invalid_argument on violated invariants. With tau_p > 0
  // every cyclic junction must connect perpendicular axes (each one carries a
  // real pi/2 rotation); with tau_p = 0 pulses are instantaneous and no
  // adjacency constraint applies, which is how doubled-frame notations such
  // as the six-column WAHUHA matrix stay representable.
  void validate() const;
};

PulseSequence make_sequence(const std::vector<Axis>& axes, const std::vector<double>& taus,
                            double tau_p = 0.0);
PulseSequence make_sequence(const std::vector<Axis>& axes, double tau, double tau_p = 0.0);

// ----------------------------------------------------------------------
// Text interchange format:
//   frames <n> tau_p <seconds>
//   <axis> <tau> <pulse_frame 0|1>     (n rows; comments start with '#')
// ----------------------------------------------------------------------

enum class ParseErrorKind {
  BadHeader,
  BadRowCount,
  BadAxis,
  BadNumber,
  NegativeDuration,
  AdjacentAxis,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ParseErrorKind kind() const { return kind_; }

 private:
  ParseErrorKind kind_;
};

PulseSequence parse_frame_matrix(std::istream& in);
PulseSequence parse_frame_matrix_text(const std::string& text);
PulseSequence load_frame_matrix(const std::string& path);

std::string format_frame_matrix(const PulseSequence& seq);
void save_frame_matrix(const PulseSequence& seq, const std::string& path);

// ----------------------------------------------------------------------
// Pulse-train <-> frame-walk conversion
// ----------------------------------------------------------------------

// A global pi/2 rotation about a lab axis in {+x,-x,+y,-y}.
struct Pulse {
  Axis about;  // must be an x or y axis
};

// Walks the toggled S^z axis through a pulse train, starting from +z.
// Returns pulses.size()+1 frames (the visited walk including the endpoint);
// delays[k] is the free evolution before pulse k+1 and becomes frame k's
// duration, the final frame gets duration 0. Zero-duration frames are marked
// as pulse frames.
FrameMatrix frames_from_pulses(const std::vector<Pulse>& pulses, const std::vector<double>& delays);

// Inverse: the lab pulse train realizing a frame walk (each adjacent
// perpendicular pair determines its connecting pi/2 pulse uniquely).
std::vector<Pulse> pulses_from_frames(const FrameMatrix& walk);

// Folds a closed walk (last frame equal to the first) into a cyclic sequence
// by dropping the duplicated endpoint.
PulseSequence fold_cyclic(const FrameMatrix& walk, double tau_p = 0.0);

// ----------------------------------------------------------------------
// Symmetrization and concatenation
// ----------------------------------------------------------------------

enum class Symmetrization { Antisymmetric, Mirror };

// Doubles the sequence: the second half is the frame list in reverse order,
// with all signs flipped for the antisymmetric variant and kept for the
// mirror variant. Durations are mirrored. Mirror symmetrization repeats the
// junction frame, which is only representable with instantaneous pulses;
// with tau_p > 0 a junction-conflict error is thrown.
PulseSequence apply_symmetrization(const PulseSequence& seq, Symmetrization mode);

// Joins two blocks of frames into one cycle (durations kept, tau_p must match).
PulseSequence concatenate(const PulseSequence& a, const PulseSequence& b);

}  // namespace frameseq
