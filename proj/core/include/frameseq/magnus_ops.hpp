#pragma once

#include "frameseq/magnus.hpp"
#include "frameseq/simulator.hpp"
#include "frameseq/spin_system.hpp"

namespace frameseq {

// H^(0) = (1/T) sum_kinds O_kind * int c_kind, exact including pulse ramps.
Matrix zeroth_order_hamiltonian(const PulseSequence& seq, const HamiltonianParams& params);

// H^(1) = (-i/T) sum_{a>b} [O_a, O_b] * W(a,b) over all term-kind pairs.
Matrix first_order_hamiltonian(const PulseSequence& seq, const HamiltonianParams& params,
                               BoundaryMode mode = BoundaryMode::Exact);

// Middle term of the two-block decomposition
//   H^(1)_{AB} = 1/2 H^(1)_A + (-i/(4T)) [T H^(0)_B, T H^(0)_A] + 1/2 H^(1)_B
// for blocks of equal duration T; zero whenever the zeroth-order block
// Hamiltonians commute.
struct PulseCycleCrossTerm {
  Matrix matrix;
  EffectiveHamiltonian table;  // Pauli-basis coefficients of the matrix
};

PulseCycleCrossTerm pulse_cycle_cross_term(const PulseSequence& seq_a,
                                           const PulseSequence& seq_b,
                                           const HamiltonianParams& params);

}  // namespace frameseq
