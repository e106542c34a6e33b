#include "frameseq/rules.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "frameseq/magnus.hpp"

namespace frameseq {

namespace {

constexpr double kPi = std::numbers::pi;

inline double fcoef(const PulseSequence& seq, int mu, std::size_t k) {
  return seq.frame(k).axis.coefficient(mu);
}
inline double icoef(const PulseSequence& seq, int mu, std::size_t k) {
  return seq.frame(k).axis.component() == mu ? 1.0 : 0.0;
}
// Signed value of frame k on its own axis.
inline double fsign(const PulseSequence& seq, std::size_t k) {
  return seq.frame(k).axis.sign();
}

}  // namespace

CumulativeSums cumulative_sums(const PulseSequence& seq) {
  seq.validate();
  const std::size_t n = seq.size();
  const double ext_f = 4.0 * seq.tau_p / kPi;
  const double ext_i = seq.tau_p;

  CumulativeSums cs;
  cs.n = n;
  cs.period = seq.period();
  cs.f_before.assign(n + 1, {});
  cs.i_before.assign(n + 1, {});
  cs.t_mid.assign(n, 0.0);

  double clock = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    clock += seq.tau_p;  // the pulse leading into frame k
    cs.t_mid[k] = clock + seq.frame(k).tau / 2.0;
    clock += seq.frame(k).tau;
    for (int mu = 0; mu < 3; ++mu) {
      const double f = fcoef(seq, mu, k) * (seq.frame(k).tau + ext_f);
      const double i = icoef(seq, mu, k) * (seq.frame(k).tau + ext_i);
      cs.f_before[k + 1][mu] = cs.f_before[k][mu] + f;
      cs.i_before[k + 1][mu] = cs.i_before[k][mu] + i;
    }
  }
  for (int mu = 0; mu < 3; ++mu) {
    cs.f_bar[mu] = cs.f_before[n][mu];
    cs.i_bar[mu] = cs.i_before[n][mu];
  }

  cs.f_pair_upto.assign(n, {});
  std::array<std::array<double, 3>, 3> run{};
  for (std::size_t k = 0; k < n; ++k) {
    const double tau = seq.frame(k).tau + ext_f;
    for (int nu = 0; nu < 3; ++nu) {
      const double f_nu = fcoef(seq, nu, k);
      for (int rho = 0; rho < 3; ++rho) {
        if (f_nu != 0.0) {
          const double before = cs.f_before[k][rho];
          const double after = cs.f_bar[rho] - cs.f_before[k + 1][rho];
          run[nu][rho] += f_nu * tau * (before - after);
          cs.f_pair_bar[nu][rho] += f_nu * tau * before;
        }
      }
    }
    cs.f_pair_upto[k] = run;
  }
  return cs;
}

PairResidual rule_row1_disorder_disorder(const PulseSequence& seq, int mu, int nu) {
  const std::size_t n = seq.size();
  const double ext = 4.0 * seq.tau_p / kPi;
  const double r = 2.0 * seq.tau_p / kPi;

  PairResidual out;
  double cum_nu = 0.0, bar_mu = 0.0, bar_nu = 0.0, pulse = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double tau = seq.frame(k).tau + ext;
    const double fm = fcoef(seq, mu, k);
    const double fn = fcoef(seq, nu, k);
    out.main += 2.0 * fm * tau * cum_nu;
    cum_nu += fn * tau;
    bar_mu += fm * tau;
    bar_nu += fn * tau;
    const std::size_t k1 = (k + 1) % n;
    pulse += fm * fcoef(seq, nu, k1) - fn * fcoef(seq, mu, k1);
  }
  out.main -= bar_mu * bar_nu;
  out.pulse = (1.0 - kPi / 4.0) * r * r * pulse;
  return out;
}

PairResidual rule_row2_disorder_ising(const PulseSequence& seq, int mu, int nu) {
  const std::size_t n = seq.size();
  const double ext = 4.0 * seq.tau_p / kPi;
  const double r = 2.0 * seq.tau_p / kPi;

  PairResidual out;
  double cum_i = 0.0, bar_mu = 0.0, bar_i = 0.0, pulse = 0.0;
  double cum_q = 0.0, qa = 0.0, qp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k1 = (k + 1) % n;
    const std::size_t k0 = (k + n - 1) % n;
    const double tau_f = seq.frame(k).tau + ext;
    const double tau_i = seq.frame(k).tau + seq.tau_p;
    const double fm = fcoef(seq, mu, k);
    const double in = icoef(seq, nu, k);
    out.main += 2.0 * fm * tau_f * cum_i;
    qa += fm * tau_f * cum_q;
    cum_i += in * tau_i;
    cum_q += fcoef(seq, nu, k) * fsign(seq, k1);
    bar_mu += fm * tau_f;
    bar_i += in * tau_i;
    pulse += fm * icoef(seq, nu, k1) - in * fcoef(seq, mu, k1);
    qp += fm * fcoef(seq, nu, k) * fsign(seq, k1) - fm * fcoef(seq, nu, k0) * fsign(seq, k);
  }
  out.main -= bar_mu * bar_i;
  out.pulse = (kPi / 4.0 - 2.0 / 3.0) * r * r * pulse;
  out.q = (seq.tau_p / kPi) * qa + (r * r / 6.0) * qp;
  return out;
}

PairResidual rule_row3_ising_ising(const PulseSequence& seq, int mu, int nu) {
  const std::size_t n = seq.size();
  const double r = 2.0 * seq.tau_p / kPi;

  double i_bar = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    i_bar += icoef(seq, nu, k) * (seq.frame(k).tau + seq.tau_p);

  PairResidual out;
  double cum_i = 0.0, pulse = 0.0;
  double cum_q = 0.0, qa = 0.0, qp = 0.0, qself = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k1 = (k + 1) % n;
    const std::size_t k0 = (k + n - 1) % n;
    const double tau_i = seq.frame(k).tau + seq.tau_p;
    const double im = icoef(seq, mu, k);
    const double in = icoef(seq, nu, k);
    const double own = in * tau_i;
    const double after = i_bar - cum_i - own;
    out.main += im * tau_i * (cum_i - after);

    const double qmu_k = fcoef(seq, mu, k) * fsign(seq, k1);  // F_{mu,k} F_{axis(k+1),k+1}
    const double qnu_k = fcoef(seq, nu, k) * fsign(seq, k1);
    qa += im * tau_i * cum_q;        // |F_mu| blocks against earlier cross terms
    qa += qmu_k * (cum_i + own);     // cross terms against cumulative |F_nu| through k
    qp += qmu_k * icoef(seq, nu, k1) - qmu_k * in + im * qnu_k -
          im * fcoef(seq, nu, k0) * fsign(seq, k);
    qself += qmu_k * cum_q + 0.5 * qmu_k * qnu_k;

    cum_i += own;
    cum_q += qnu_k;
    pulse += im * icoef(seq, nu, k1) - in * icoef(seq, mu, k1);
  }
  out.pulse = (kPi * kPi / 32.0 - 0.25) * r * r * pulse;
  out.q = (seq.tau_p / kPi) * qa + (seq.tau_p * seq.tau_p / (8.0 * kPi)) * qp +
          (seq.tau_p / kPi) * (seq.tau_p / kPi) * qself;
  return out;
}

double rule_row4_disorder_heisenberg(const PulseSequence& seq, int mu) {
  const std::size_t n = seq.size();
  const double ext = 4.0 * seq.tau_p / kPi;
  const double period = seq.period();

  double acc = 0.0, clock = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    clock += seq.tau_p;
    const double t_mid = clock + seq.frame(k).tau / 2.0;
    acc += fcoef(seq, mu, k) * (seq.frame(k).tau + ext) * (t_mid - period / 2.0);
    clock += seq.frame(k).tau;
  }
  return acc;
}

PairResidual rule_row5_ising_heisenberg(const PulseSequence& seq, int mu,
                                        const RuleOptions& opts) {
  const std::size_t n = seq.size();
  const double ext = opts.table_constants ? 4.0 * seq.tau_p / kPi : seq.tau_p;
  const double period = seq.period();

  PairResidual out;
  double clock = 0.0, cum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    clock += seq.tau_p;
    const double t_mid = clock + seq.frame(k).tau / 2.0;
    out.main += icoef(seq, mu, k) * (seq.frame(k).tau + ext) * (t_mid - period / 2.0);
    clock += seq.frame(k).tau;
    cum += seq.frame(k).tau + seq.tau_p;
    out.q += fcoef(seq, mu, k) * fsign(seq, (k + 1) % n) * (cum + seq.tau_p / 2.0);
  }
  out.q *= seq.tau_p / kPi;
  return out;
}

double rule_row7_second_order_disorder(const PulseSequence& seq, int mu, int nu, int rho,
                                       const RuleOptions& opts) {
  if (!opts.table_constants) {
    return second_order_disorder_integral(seq, OperatorTermKind::disorder(mu),
                                          OperatorTermKind::disorder(nu),
                                          OperatorTermKind::disorder(rho))
        .value;
  }
  // Literal table variant: outer lengthening tau_p/pi, one-sided total.
  const CumulativeSums cs = cumulative_sums(seq);
  double acc = 0.0;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    acc += fcoef(seq, mu, k) * (seq.frame(k).tau + seq.tau_p / kPi) * cs.f_pair_upto[k][nu][rho];
  }
  return 2.0 * acc - cs.f_bar[mu] * cs.f_pair_bar[nu][rho];
}

ZerothResiduals zeroth_rules(const PulseSequence& seq) {
  const CumulativeSums cs = cumulative_sums(seq);
  ZerothResiduals out;
  out.disorder = cs.f_bar;
  double imb = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      imb = std::max(imb, std::abs(cs.i_bar[a] - cs.i_bar[b]));
  out.interaction_imbalance = imb;
  return out;
}

namespace {

int residual_order(int row) {
  if (row == 0) return 0;
  if (row == 7) return 2;
  return 1;
}

bool under(double v, double bound) { return std::abs(v) <= bound; }

}  // namespace

RuleReport evaluate_ruleset(const PulseSequence& seq, const std::vector<int>& rows,
                            double tolerance, const RuleOptions& opts) {
  seq.validate();
  RuleReport report;
  report.tolerance = tolerance;
  report.period = seq.period();

  auto push = [&](RuleResidual r) {
    const double scale =
        tolerance * std::pow(report.period, residual_order(r.row) + 1);
    r.pass = under(r.main, scale) && under(r.pulse, scale) && under(r.q, scale);
    report.rows.push_back(r);
  };

  for (int row : rows) {
    switch (row) {
      case 0: {
        const ZerothResiduals z = zeroth_rules(seq);
        for (int mu = 0; mu < 3; ++mu)
          push(RuleResidual{0, mu, -1, -1, z.disorder[mu], 0.0, 0.0, true});
        push(RuleResidual{0, -1, -1, -1, z.interaction_imbalance, 0.0, 0.0, true});
        break;
      }
      case 1:
        for (int mu = 0; mu < 3; ++mu)
          for (int nu = 0; nu < 3; ++nu) {
            if (mu == nu) continue;
            const PairResidual p = rule_row1_disorder_disorder(seq, mu, nu);
            push(RuleResidual{1, mu, nu, -1, p.main, p.pulse, p.q, true});
          }
        break;
      case 2:
        for (int mu = 0; mu < 3; ++mu)
          for (int nu = 0; nu < 3; ++nu) {
            if (mu == nu) continue;
            const PairResidual p = rule_row2_disorder_ising(seq, mu, nu);
            push(RuleResidual{2, mu, nu, -1, p.main, p.pulse, p.q, true});
          }
        break;
      case 3:
        for (int mu = 0; mu < 3; ++mu)
          for (int nu = 0; nu < 3; ++nu) {
            if (mu == nu) continue;
            const PairResidual p = rule_row3_ising_ising(seq, mu, nu);
            push(RuleResidual{3, mu, nu, -1, p.main, p.pulse, p.q, true});
          }
        break;
      case 4:
        for (int mu = 0; mu < 3; ++mu)
          push(RuleResidual{4, mu, -1, -1, rule_row4_disorder_heisenberg(seq, mu), 0.0, 0.0,
                            true});
        break;
      case 5:
        for (int mu = 0; mu < 3; ++mu) {
          const PairResidual p = rule_row5_ising_heisenberg(seq, mu, opts);
          push(RuleResidual{5, mu, -1, -1, p.main, p.pulse, p.q, true});
        }
        break;
      case 6:
        push(RuleResidual{6, -1, -1, -1, 0.0, 0.0, 0.0, true});
        break;
      case 7:
        for (int mu = 0; mu < 3; ++mu)
          for (int nu = 0; nu < 3; ++nu)
            for (int rho = 0; rho < 3; ++rho) {
              if (nu == rho) continue;
              const double v = rule_row7_second_order_disorder(seq, mu, nu, rho, opts);
              push(RuleResidual{7, mu, nu, rho, v, 0.0, 0.0, true});
            }
        break;
      default:
        throw std::invalid_argument("unknown rule row " + std::to_string(row));
    }
  }
  return report;
}

std::string RuleResidual::axes_label() const {
  if (mu < 0) return "all";
  std::string s = component_name(mu);
  if (nu >= 0) s += component_name(nu);
  if (rho >= 0) s += component_name(rho);
  return s;
}

bool RuleReport::all_pass() const {
  for (const RuleResidual& r : rows)
    if (!r.pass) return false;
  return true;
}

std::string format_rule_report(const RuleReport& report) {
  std::string out;
  char buf[160];
  for (const RuleResidual& r : report.rows) {
    std::snprintf(buf, sizeof buf, "rule=%d axes=%s main=%.17g pulse=%.17g q=%.17g pass=%d\n",
                  r.row, r.axes_label().c_str(), r.main, r.pulse, r.q, r.pass ? 1 : 0);
    out += buf;
  }
  return out;
}

void write_rule_report(std::ostream& out, const RuleReport& report) {
  out << format_rule_report(report);
}

}  // namespace frameseq
