#include "frameseq/simulator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "frameseq/rng.hpp"

namespace frameseq {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& evals = es.eigenvalues();
  Matrix out = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -evals(i) * t));
    out += phase * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return out;
}

Vector3 axis_vector(const Axis& a) {
  const auto v = a.unit_vector();
  return Vector3(v[0], v[1], v[2]);
}

}  // namespace

double evolution_period(const PulseSequence& seq, bool finite_pulses) {
  return finite_pulses ? seq.period() : seq.free_time();
}

Matrix evolve_sequence(const PulseSequence& seq, const HamiltonianParams& params,
                       bool finite_pulses, int steps_per_pulse) {
  seq.validate();
  params.validate();
  if (steps_per_pulse < 1) throw std::invalid_argument("steps_per_pulse must be >= 1");

  const Eigen::Index dim = Eigen::Index(1) << params.n_spins();
  Matrix u = Matrix::Identity(dim, dim);
  const std::size_t n = seq.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vector3 fk = axis_vector(seq.frame(k).axis);
    if (seq.frame(k).tau > 0.0) {
      u = expm_hermitian(toggled_hamiltonian(params, fk), seq.frame(k).tau) * u;
    }
    if (finite_pulses && seq.tau_p > 0.0) {
      const Vector3 fk1 = axis_vector(seq.frame((k + 1) % n).axis);
      const double dt = seq.tau_p / steps_per_pulse;
      for (int m = 0; m < steps_per_pulse; ++m) {
        const double theta = (kPi / 2.0) * (m + 0.5) / steps_per_pulse;
        const Vector3 f = std::cos(theta) * fk + std::sin(theta) * fk1;
        u = expm_hermitian(toggled_hamiltonian(params, f), dt) * u;
      }
    }
  }
  return u;
}

// ----------------------------------------------------------------------
// Pauli decomposition and matrix-log extraction
// ----------------------------------------------------------------------

namespace {

Matrix pauli_string(int n_spins, int index) {
  Matrix out = Matrix::Identity(1, 1);
  // spin 0 is the leftmost letter, i.e. the most significant base-4 digit
  std::vector<int> digits(static_cast<std::size_t>(n_spins), 0);
  for (int s = n_spins - 1; s >= 0; --s) {
    digits[static_cast<std::size_t>(s)] = index % 4;
    index /= 4;
  }
  for (int s = 0; s < n_spins; ++s) out = kron(out, pauli(digits[static_cast<std::size_t>(s)]));
  return out;
}

int n_spins_of_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;
  if ((Eigen::Index(1) << n) != dim) throw std::invalid_argument("dimension is not 2^n");
  return n;
}

}  // namespace

Eigen::VectorXd pauli_decompose(const Matrix& hermitian) {
  const int n = n_spins_of_dim(hermitian.rows());
  const int total = 1 << (2 * n);
  Eigen::VectorXd coeffs(total);
  const double norm = std::pow(2.0, n);
  for (int p = 0; p < total; ++p) {
    coeffs(p) = (pauli_string(n, p) * hermitian).trace().real() / norm;
  }
  return coeffs;
}

std::string EffectiveHamiltonian::label(int index) const {
  static const char letters[] = {'I', 'X', 'Y', 'Z'};
  std::string s(static_cast<std::size_t>(n_spins), 'I');
  for (int pos = n_spins - 1; pos >= 0; --pos) {
    s[static_cast<std::size_t>(pos)] = letters[index % 4];
    index /= 4;
  }
  return s;
}

int EffectiveHamiltonian::index_of(const std::string& lbl) const {
  if (static_cast<int>(lbl.size()) != n_spins)
    throw std::invalid_argument("label length must equal spin count");
  int idx = 0;
  for (char c : lbl) {
    int d = 0;
    switch (c) {
      case 'I': d = 0; break;
      case 'X': d = 1; break;
      case 'Y': d = 2; break;
      case 'Z': d = 3; break;
      default: throw std::invalid_argument("label letters must be I,X,Y,Z");
    }
    idx = idx * 4 + d;
  }
  return idx;
}

double EffectiveHamiltonian::coeff(const std::string& lbl) const {
  return coeffs(index_of(lbl));
}

Eigen::VectorXd EffectiveHamiltonian::error_coefficients() const {
  Eigen::VectorXd err = coeffs;
  err(0) = 0.0;  // identity
  for (int i = 0; i < n_spins; ++i) {
    for (int j = i + 1; j < n_spins; ++j) {
      std::array<int, 3> idx{};
      double mean = 0.0;
      for (int mu = 1; mu <= 3; ++mu) {
        std::string lbl(static_cast<std::size_t>(n_spins), 'I');
        lbl[static_cast<std::size_t>(i)] = "IXYZ"[mu];
        lbl[static_cast<std::size_t>(j)] = "IXYZ"[mu];
        idx[static_cast<std::size_t>(mu - 1)] = index_of(lbl);
        mean += err(idx[static_cast<std::size_t>(mu - 1)]);
      }
      mean /= 3.0;
      for (int m : idx) err(m) -= mean;
    }
  }
  return err;
}

double EffectiveHamiltonian::error_norm() const { return error_coefficients().norm(); }

EffectiveHamiltonian extract_effective_hamiltonian(const Matrix& unitary, double period) {
  if (period <= 0.0) throw std::invalid_argument("period must be positive");
  const Eigen::Index dim = unitary.rows();
  Eigen::ComplexSchur<Matrix> schur(unitary);
  if (schur.info() != Eigen::Success) throw std::runtime_error("Schur decomposition failed");

  const Matrix& t = schur.matrixT();
  double offdiag = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i + 1; j < dim; ++j) offdiag = std::max(offdiag, std::abs(t(i, j)));
  if (offdiag > 1e-8)
    throw std::runtime_error("matrix is not unitary enough for eigenphase extraction");

  Eigen::VectorXd energies(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double phase = std::arg(t(i, i));
    if (std::abs(phase) > kPi - 1e-6)
      throw std::runtime_error(
          "eigenphase at the principal-branch cut; shorten the cycle before extracting");
    energies(i) = -phase / period;
  }

  Matrix h = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    h += energies(i) * schur.matrixU().col(i) * schur.matrixU().col(i).adjoint();
  }
  h = 0.5 * (h + Matrix(h.adjoint()));

  EffectiveHamiltonian out;
  out.n_spins = n_spins_of_dim(dim);
  out.period = period;
  out.coeffs = pauli_decompose(h);
  return out;
}

// ----------------------------------------------------------------------
// Scaling fits
// ----------------------------------------------------------------------

ScalingFit error_scaling_fit(const PulseSequence& seq, const HamiltonianParams& base,
                             SweepTarget target, const std::vector<double>& scale_factors,
                             const std::string& component, bool finite_pulses) {
  if (scale_factors.size() < 2)
    throw std::invalid_argument("need at least two sweep points for a fit");
  ScalingFit fit;
  const double period = evolution_period(seq, finite_pulses);
  double typical = 0.0;

  for (double s : scale_factors) {
    HamiltonianParams p = base;
    if (target == SweepTarget::Disorder) {
      for (double& hi : p.h) hi *= s;
    } else {
      p.coupling *= s;
    }
    const Matrix u = evolve_sequence(seq, p, finite_pulses);
    const EffectiveHamiltonian eff = extract_effective_hamiltonian(u, period);
    const double mag = std::abs(eff.coeff(component));
    fit.scales.push_back(s);
    fit.magnitudes.push_back(mag);
    typical = std::max(typical, eff.coeffs.cwiseAbs().maxCoeff());
  }

  double floor_mag = 1e-14 * std::max(typical, 1e-300);
  for (double m : fit.magnitudes) {
    if (m <= floor_mag) {
      fit.degenerate = true;
      return fit;
    }
  }

  const std::size_t n = fit.scales.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(fit.scales[i]);
    const double y = std::log(fit.magnitudes[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) {
    fit.degenerate = true;
    return fit;
  }
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.log_amplitude = (sy - fit.exponent * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r =
        std::log(fit.magnitudes[i]) - (fit.log_amplitude + fit.exponent * std::log(fit.scales[i]));
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

// ----------------------------------------------------------------------
// Two-qubit commutator selection rules
// ----------------------------------------------------------------------

namespace {

Matrix h_of_interaction(const Eigen::Matrix4d& a) {
  Matrix h = Matrix::Zero(4, 4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      if (a(m, n) != 0.0) h += a(m, n) * kron(pauli(m), pauli(n));
  return h;
}

Matrix a_dis(const Vector3& f, int sgn) {
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 3; ++i) {
    a(0, i + 1) = sgn * f(i);
    a(i + 1, 0) = f(i);
  }
  return h_of_interaction(a);
}

Matrix a_heis() {
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity();
  return h_of_interaction(a);
}

Matrix a_ising(const Vector3& f, const Vector3& g) {
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a.block<3, 3>(1, 1) = 0.5 * (f * g.transpose() + g * f.transpose());
  return h_of_interaction(a);
}

Matrix a_antisym(const Vector3& f) {
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  Eigen::Matrix3d m;
  m << 0, f(2), -f(1), -f(2), 0, f(0), f(1), -f(0), 0;
  a.block<3, 3>(1, 1) = m;
  return h_of_interaction(a);
}

Matrix comm(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace

SelectionRuleReport verify_selection_rules(int trials, std::uint64_t seed) {
  SelectionRuleReport rep;
  rep.trials = trials;
  rep.names = {
      "[dis+,dis+] = 2i dis+(FxG)",
      "[dis+,dis-] = 2i dis-(FxG)",
      "[dis-,dis-] = 2i dis+(FxG)",
      "[dis+,heis] = 0",
      "[dis+,ising(G)] = 4i ising(G,FxG)",
      "[dis-,heis] = -4i antisym(F)",
      "[dis-,ising(G)] = 2i((F.G) antisym(G) - antisym(F))",
      "[heis,ising(G)] = 0",
      "[ising(F),ising(G)] = 2i (F.G) dis+(FxG), = 0 for perpendicular axes",
  };
  rep.max_deviation.assign(rep.names.size(), 0.0);

  CounterRng rng(seed, 0);
  const std::complex<double> i2(0.0, 2.0);
  const std::complex<double> i4(0.0, 4.0);

  auto unit = [&rng]() {
    Vector3 v;
    do {
      v = Vector3(rng.next_normal(), rng.next_normal(), rng.next_normal());
    } while (v.norm() < 1e-6);
    return Vector3(v / v.norm());
  };

  for (int t = 0; t < trials; ++t) {
    const Vector3 f = unit();
    const Vector3 g = unit();
    const Vector3 c = f.cross(g);

    auto record = [&rep](int idx, const Matrix& dev) {
      rep.max_deviation[static_cast<std::size_t>(idx)] = std::max(
          rep.max_deviation[static_cast<std::size_t>(idx)], dev.cwiseAbs().maxCoeff());
    };

    record(0, comm(a_dis(f, +1), a_dis(g, +1)) - i2 * a_dis(c, +1));
    record(1, comm(a_dis(f, +1), a_dis(g, -1)) - i2 * a_dis(c, -1));
    record(2, comm(a_dis(f, -1), a_dis(g, -1)) - i2 * a_dis(c, +1));
    record(3, comm(a_dis(f, +1), a_heis()));
    record(4, comm(a_dis(f, +1), a_ising(g, g)) - i4 * a_ising(g, c));
    record(5, comm(a_dis(f, -1), a_heis()) + i4 * a_antisym(f));
    record(6, comm(a_dis(f, -1), a_ising(g, g)) -
                  i2 * (f.dot(g) * a_antisym(g) - a_antisym(f)));
    record(7, comm(a_heis(), a_ising(g, g)));
    record(8, comm(a_ising(f, f), a_ising(g, g)) - i2 * f.dot(g) * a_dis(c, +1));

    // axis-aligned perpendicular pair: the Ising-Ising bracket vanishes
    const int mu = static_cast<int>(rng.next_below(3));
    const int shift = 1 + static_cast<int>(rng.next_below(2));
    const int nu = (mu + shift) % 3;
    Vector3 ea = Vector3::Zero(), eb = Vector3::Zero();
    ea(mu) = rng.next_below(2) ? 1.0 : -1.0;
    eb(nu) = rng.next_below(2) ? 1.0 : -1.0;
    record(8, comm(a_ising(ea, ea), a_ising(eb, eb)));
  }
  return rep;
}

bool SelectionRuleReport::pass(double tol) const {
  for (double d : max_deviation)
    if (!(d <= tol)) return false;
  return true;
}

}  // namespace frameseq
