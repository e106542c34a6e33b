#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "frameseq/trajectory.hpp"

namespace frameseq {

using Matrix = Eigen::MatrixXcd;
using Vector3 = Eigen::Vector3d;

// Secular spin-1/2 Hamiltonian: on-site disorder along z plus two-body
// interactions g0 * S.S + g1 * Sz Sz per coupled pair.
//   dipolar:  g0 = 1,  g1 = -3      (eq. h_i S_i^z + J_ij (S.S - 3 Sz Sz))
//   xxz(l):   g0 = (1+l)/3, g1 = -l (tunable anisotropic target family)
struct HamiltonianParams {
  enum class Model { Dipolar, Xxz };

  std::vector<double> h;     // angular frequency per spin
  Eigen::MatrixXd coupling;  // symmetric, zero diagonal, angular frequency
  Model model = Model::Dipolar;
  double lambda = 0.0;

  int n_spins() const { return static_cast<int>(h.size()); }
  double heisenberg_weight() const;
  double ising_weight() const;
  void validate() const;

  static HamiltonianParams two_spin(double h1, double h2, double j,
                                    Model model = Model::Dipolar, double lambda = 0.0);
};

// Pauli matrices (sigma, not sigma/2).
const Matrix& pauli(int mu);  // 0..3 -> I, X, Y, Z
Matrix kron(const Matrix& a, const Matrix& b);

// S^mu = sigma^mu / 2 acting on spin `site` of an n-spin register.
Matrix spin_op(int n_spins, int site, int mu);

// Native Hamiltonian (frame +z).
Matrix build_hamiltonian(const HamiltonianParams& params);

// Interaction-picture Hamiltonian for toggled quantization axis f (unit
// vector): disorder h_i (f.S_i), interactions g0 S.S + g1 (f.S_i)(f.S_j).
Matrix toggled_hamiltonian(const HamiltonianParams& params, const Vector3& f);

// Operator multiplying a trajectory coefficient so that
// H~(t) = sum_kind c_kind(t) * term_operator(kind).
Matrix term_operator(const HamiltonianParams& params, const OperatorTermKind& kind);

}  // namespace frameseq
