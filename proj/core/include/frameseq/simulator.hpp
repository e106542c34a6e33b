#pragma once

#include <string>
#include <vector>

#include "frameseq/spin_system.hpp"

namespace frameseq {

// Exact one-cycle propagator. Free segments are closed-form exponentials of
// the frame-rotated Hamiltonian; with finite_pulses on, each pi/2 window is
// integrated in the toggling frame (quantization axis swept along the great
// circle between the two frame axes) with a fine-stepped exponential product.
// The control rotations compose to identity over the cycle, so this equals
// the lab-frame propagator with the drive included.
Matrix evolve_sequence(const PulseSequence& seq, const HamiltonianParams& params,
                       bool finite_pulses, int steps_per_pulse = 64);

// One-cycle duration matching evolve_sequence's flag.
double evolution_period(const PulseSequence& seq, bool finite_pulses);

// Coefficients of a Hermitian operator over tensor products of {I,X,Y,Z}
// (Pauli matrices, not spin operators): H = sum_P coeffs[P] * sigma_P.
struct EffectiveHamiltonian {
  int n_spins = 0;
  double period = 0.0;
  Eigen::VectorXd coeffs;  // 4^n real entries, base-4 index, spin 0 leftmost

  std::string label(int index) const;
  double coeff(const std::string& label) const;
  int index_of(const std::string& label) const;

  // Norm of the error coefficients: identity dropped, and per spin pair the
  // isotropic (XX+YY+ZZ)/3 part removed, which subtracts the ideal
  // Heisenberg portion of an engineered Hamiltonian.
  double error_norm() const;
  Eigen::VectorXd error_coefficients() const;
};

Eigen::VectorXd pauli_decompose(const Matrix& hermitian);

// H_eff = (i/T) log U through the principal branch (unitary eigenphases in
// (-pi, pi)). Throws if an eigenphase sits within 1e-6 of the branch cut.
EffectiveHamiltonian extract_effective_hamiltonian(const Matrix& unitary, double period);

// Least-squares log-log fit of |component coefficient| against a swept
// parameter scale.
struct ScalingFit {
  double exponent = 0.0;
  double log_amplitude = 0.0;
  double rms_residual = 0.0;
  bool degenerate = false;  // component indistinguishable from zero
  std::vector<double> scales;
  std::vector<double> magnitudes;
};

enum class SweepTarget { Disorder, Coupling };

ScalingFit error_scaling_fit(const PulseSequence& seq, const HamiltonianParams& base,
                             SweepTarget target, const std::vector<double>& scale_factors,
                             const std::string& component, bool finite_pulses = false);

// Appendix-style commutator selection rules for the 4x4 two-qubit
// interaction representation; nine identities checked on random unit frame
// vectors.
struct SelectionRuleReport {
  std::vector<std::string> names;
  std::vector<double> max_deviation;
  int trials = 0;
  bool pass(double tol = 1e-12) const;
};

SelectionRuleReport verify_selection_rules(int trials, std::uint64_t seed);

}  // namespace frameseq
