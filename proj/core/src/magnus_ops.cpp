#include "frameseq/magnus_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace frameseq {

Matrix zeroth_order_hamiltonian(const PulseSequence& seq, const HamiltonianParams& params) {
  const double period = seq.period();
  if (period <= 0.0) throw std::invalid_argument("sequence has zero duration");
  const Eigen::Index dim = Eigen::Index(1) << params.n_spins();
  Matrix h = Matrix::Zero(dim, dim);
  for (const OperatorTermKind& kind : all_term_kinds()) {
    const double weight = zeroth_integral(coefficient_trajectory(seq, kind));
    if (weight != 0.0) h += (weight / period) * term_operator(params, kind);
  }
  return h;
}

Matrix first_order_hamiltonian(const PulseSequence& seq, const HamiltonianParams& params,
                               BoundaryMode mode) {
  const double period = seq.period();
  if (period <= 0.0) throw std::invalid_argument("sequence has zero duration");
  const Eigen::Index dim = Eigen::Index(1) << params.n_spins();

  const std::vector<OperatorTermKind> kinds = all_term_kinds();
  std::vector<Matrix> ops;
  ops.reserve(kinds.size());
  for (const OperatorTermKind& kind : kinds) ops.push_back(term_operator(params, kind));

  Matrix h = Matrix::Zero(dim, dim);
  const std::complex<double> minus_i(0.0, -1.0);
  for (std::size_t a = 0; a < kinds.size(); ++a) {
    if (ops[a].isZero(0.0)) continue;
    for (std::size_t b = 0; b < a; ++b) {
      if (ops[b].isZero(0.0)) continue;
      const double w = first_order_integral(seq, kinds[a], kinds[b], mode).value;
      if (w == 0.0) continue;
      h += (minus_i * w / period) * (ops[a] * ops[b] - ops[b] * ops[a]);
    }
  }
  return h;
}

PulseCycleCrossTerm pulse_cycle_cross_term(const PulseSequence& seq_a,
                                           const PulseSequence& seq_b,
                                           const HamiltonianParams& params) {
  const double ta = seq_a.period();
  const double tb = seq_b.period();
  if (std::abs(ta - tb) > 1e-12 * std::max(ta, tb))
    throw std::invalid_argument("pulse-cycle blocks must have equal duration");

  const Matrix h0a = zeroth_order_hamiltonian(seq_a, params);
  const Matrix h0b = zeroth_order_hamiltonian(seq_b, params);

  PulseCycleCrossTerm out;
  const std::complex<double> pref(0.0, -ta / 4.0);  // (-i/4T) [T H0_B, T H0_A]
  out.matrix = pref * (h0b * h0a - h0a * h0b);
  out.table.n_spins = params.n_spins();
  out.table.period = ta;
  out.table.coeffs = pauli_decompose(out.matrix);
  return out;
}

}  // namespace frameseq
