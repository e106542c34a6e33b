#include "frameseq/spin_system.hpp"

#include <stdexcept>

namespace frameseq {

double HamiltonianParams::heisenberg_weight() const {
  return model == Model::Dipolar ? 1.0 : (1.0 + lambda) / 3.0;
}

double HamiltonianParams::ising_weight() const {
  return model == Model::Dipolar ? -3.0 : -lambda;
}

void HamiltonianParams::validate() const {
  const int n = n_spins();
  if (n < 1) throw std::invalid_argument("need at least one spin");
  if (coupling.rows() != n || coupling.cols() != n)
    throw std::invalid_argument("coupling matrix must be n x n");
  for (int i = 0; i < n; ++i) {
    if (coupling(i, i) != 0.0) throw std::invalid_argument("coupling diagonal must be zero");
    for (int j = 0; j < i; ++j)
      if (coupling(i, j) != coupling(j, i))
        throw std::invalid_argument("coupling matrix must be symmetric");
  }
}

HamiltonianParams HamiltonianParams::two_spin(double h1, double h2, double j, Model model,
                                              double lambda) {
  HamiltonianParams p;
  p.h = {h1, h2};
  p.coupling = Eigen::MatrixXd::Zero(2, 2);
  p.coupling(0, 1) = p.coupling(1, 0) = j;
  p.model = model;
  p.lambda = lambda;
  return p;
}

const Matrix& pauli(int mu) {
  static const std::array<Matrix, 4> sigma = [] {
    std::array<Matrix, 4> s;
    s[0] = Matrix::Identity(2, 2);
    s[1] = Matrix::Zero(2, 2);
    s[1] << 0, 1, 1, 0;
    s[2] = Matrix::Zero(2, 2);
    s[2] << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    s[3] = Matrix::Zero(2, 2);
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return sigma[static_cast<std::size_t>(mu)];
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix spin_op(int n_spins, int site, int mu) {
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < n_spins; ++s) {
    out = kron(out, s == site ? Matrix(0.5 * pauli(mu + 1)) : pauli(0));
  }
  return out;
}

namespace {

Matrix directed_spin(const HamiltonianParams& p, int site, const Vector3& f) {
  const int n = p.n_spins();
  return f.x() * spin_op(n, site, 0) + f.y() * spin_op(n, site, 1) + f.z() * spin_op(n, site, 2);
}

}  // namespace

Matrix toggled_hamiltonian(const HamiltonianParams& params, const Vector3& f) {
  params.validate();
  const int n = params.n_spins();
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix h = Matrix::Zero(dim, dim);

  for (int i = 0; i < n; ++i) {
    if (params.h[static_cast<std::size_t>(i)] != 0.0)
      h += params.h[static_cast<std::size_t>(i)] * directed_spin(params, i, f);
  }
  const double g0 = params.heisenberg_weight();
  const double g1 = params.ising_weight();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double jij = params.coupling(i, j);
      if (jij == 0.0) continue;
      Matrix dot = Matrix::Zero(dim, dim);
      for (int mu = 0; mu < 3; ++mu) dot += spin_op(n, i, mu) * spin_op(n, j, mu);
      const Matrix fi = directed_spin(params, i, f);
      const Matrix fj = directed_spin(params, j, f);
      h += jij * (g0 * dot + g1 * fi * fj);
    }
  }
  return h;
}

Matrix build_hamiltonian(const HamiltonianParams& params) {
  return toggled_hamiltonian(params, Vector3(0, 0, 1));
}

Matrix term_operator(const HamiltonianParams& params, const OperatorTermKind& kind) {
  params.validate();
  const int n = params.n_spins();
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix out = Matrix::Zero(dim, dim);

  switch (kind.tag) {
    case OperatorTermKind::Tag::Disorder:
      for (int i = 0; i < n; ++i)
        out += params.h[static_cast<std::size_t>(i)] * spin_op(n, i, kind.axis1);
      return out;
    case OperatorTermKind::Tag::Heisenberg: {
      const double g0 = params.heisenberg_weight();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double jij = params.coupling(i, j);
          if (jij == 0.0) continue;
          for (int mu = 0; mu < 3; ++mu)
            out += jij * g0 * spin_op(n, i, mu) * spin_op(n, j, mu);
        }
      return out;
    }
    case OperatorTermKind::Tag::Ising: {
      const double g1 = params.ising_weight();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double jij = params.coupling(i, j);
          if (jij == 0.0) continue;
          out += jij * g1 * spin_op(n, i, kind.axis1) * spin_op(n, j, kind.axis1);
        }
      return out;
    }
    case OperatorTermKind::Tag::IsingCross: {
      const double g1 = params.ising_weight();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double jij = params.coupling(i, j);
          if (jij == 0.0) continue;
          out += jij * g1 *
                 (spin_op(n, i, kind.axis1) * spin_op(n, j, kind.axis2) +
                  spin_op(n, i, kind.axis2) * spin_op(n, j, kind.axis1));
        }
      return out;
    }
  }
  return out;
}

}  // namespace frameseq
