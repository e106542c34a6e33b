#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "frameseq/sequence.hpp"

namespace frameseq {

// Running sums of the frame matrix used by the rule table. Durations are
// lengthened by the finite pulse duration: disorder rows by (4/pi) tau_p,
// Ising rows by tau_p.
struct CumulativeSums {
  std::size_t n = 0;
  double period = 0.0;
  std::array<double, 3> f_bar{};  // sum_k F_{mu,k} (tau_k + 4 tau_p / pi)
  std::array<double, 3> i_bar{};  // sum_k |F_{mu,k}| (tau_k + tau_p)
  // prefix sums, index k holds the sum over l < k (so [0] = 0, [n] = total)
  std::vector<std::array<double, 3>> f_before;
  std::vector<std::array<double, 3>> i_before;
  // F^{nu,rho}_{<k}: first-order disorder-disorder accumulation through
  // frame k (inclusive), index k holds sum over l <= k
  std::vector<std::array<std::array<double, 3>, 3>> f_pair_upto;
  std::array<std::array<double, 3>, 3> f_pair_bar{};  // sum_k F_{nu,k} tau'_k F^rho_{<k}
  std::vector<double> t_mid;  // midpoint of the pulse-extended k-th frame
};

CumulativeSums cumulative_sums(const PulseSequence& seq);

struct RuleOptions {
  // Use the rule-table variants of the constants that differ from the
  // appendix derivations (row 5 lengthening 4 tau_p/pi instead of tau_p,
  // row 7 outer lengthening tau_p/pi with the one-sided total).
  bool table_constants = false;
};

struct PairResidual {
  double main = 0.0;
  double pulse = 0.0;
  double q = 0.0;
};

// Table rows, per ordered axis pair (mu != nu) or per axis. All sums over
// consecutive frames are cyclic and include zero-duration pulse frames.
PairResidual rule_row1_disorder_disorder(const PulseSequence& seq, int mu, int nu);
PairResidual rule_row2_disorder_ising(const PulseSequence& seq, int mu, int nu);
PairResidual rule_row3_ising_ising(const PulseSequence& seq, int mu, int nu);
double rule_row4_disorder_heisenberg(const PulseSequence& seq, int mu);
PairResidual rule_row5_ising_heisenberg(const PulseSequence& seq, int mu,
                                        const RuleOptions& opts = {});
// Second-order disorder row, per axis triple (mu; nu, rho).
double rule_row7_second_order_disorder(const PulseSequence& seq, int mu, int nu, int rho,
                                       const RuleOptions& opts = {});

struct ZerothResiduals {
  std::array<double, 3> disorder{};  // F-bar per axis
  double interaction_imbalance = 0.0;
};
ZerothResiduals zeroth_rules(const PulseSequence& seq);

struct RuleResidual {
  int row = 0;        // 0 for the zeroth-order conditions
  int mu = -1;
  int nu = -1;
  int rho = -1;
  double main = 0.0;
  double pulse = 0.0;
  double q = 0.0;
  bool pass = true;

  std::string axes_label() const;
};

struct RuleReport {
  std::vector<RuleResidual> rows;
  double tolerance = 0.0;
  double period = 0.0;
  bool all_pass() const;
};

// Evaluates the selected rule rows (ids from {0,1,2,3,4,5,6,7}); pass flags
// compare each residual against tolerance * T^(order+1).
RuleReport evaluate_ruleset(const PulseSequence& seq, const std::vector<int>& rows,
                            double tolerance, const RuleOptions& opts = {});

// Line-oriented serialization:
//   rule=<row> axes=<mu nu [rho]> main=<val> pulse=<val> q=<val> pass=<0|1>
std::string format_rule_report(const RuleReport& report);
void write_rule_report(std::ostream& out, const RuleReport& report);

}  // namespace frameseq
