#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dparity/exact_linalg.hpp"
#include "dparity/genfun.hpp"
#include "dparity/model.hpp"
#include "dparity/rational.hpp"

namespace dparity {

struct EvalOptions {
  /// 0 means hardware concurrency.
  unsigned threads = 1;
  RhoLadder rho = RhoLadder::Standard;
  SingularPolicy singular = SingularPolicy::Resolve;
};

/// A truncated sum over the box [1, M]^d, accumulated shell by shell
/// (shell N = tuples with max-norm N).
struct PartialSum {
  /// Compensated sum over the box.
  Complex value{};
  /// value plus the fitted tail; equals value when nothing is omitted.
  Complex extrapolated{};
  std::int64_t M = 0;
  /// Heuristic size of the omitted tail: |outermost shell| * M / p, with p
  /// the tail decay exponent. Non-negative.
  double tail_estimate = 0.0;
  /// Disagreement between two tail fits of different order.
  double extrapolation_error = 0.0;
  std::uint64_t terms_summed = 0;
  /// Tail exponent p used for the estimate (0 when nothing was omitted).
  int tail_exponent = 0;
  /// Decay too slow for the shell heuristic (p < 1).
  bool slow = false;
};

/// Shell-fit extrapolation of a sequence of cumulative sums S(1..M).
/// The model is S(N) = S_inf + sum_{a=p}^{p+2} sum_{b<=log_power} c_ab N^{-a} log^b N,
/// fitted over N in [M/4, M] restricted to N = M (mod period).
struct Extrapolation {
  Complex value{};
  double error = 0.0;
  bool fitted = false;
};
Extrapolation extrapolate_tail(const std::vector<Complex>& cumulative, std::int64_t period, int exponent,
                               int log_power);

/// Smallest tail exponent of the direct sum: the minimum over non-empty
/// variable subsets S of sum_{j in S} h_j + sum_{rows touching S} k_i - |S|.
int direct_tail_exponent(const SeriesSpec& spec);

/// zeta_{r,ell}(h, k, y, A) truncated to [1, M]^r.
PartialSum zeta_direct(const SeriesSpec& spec, std::int64_t M, const EvalOptions& options = {});

/// The generating function of (spec, J) with the spec's caps.
GeneratingFunction prepare_generating_function(const SeriesSpec& spec, const SubsetContext& ctx,
                                               const EvalOptions& options = {});

/// D(h_J, k_I, y_J; Lambda(m_outer)).
Complex coefficient_D(const SeriesSpec& spec, const SubsetContext& ctx, const GeneratingFunction& gf,
                      const IntVector& m_outer, SingularPolicy policy = SingularPolicy::Resolve);

/// (-1)^{wt(h_Jbar) + wt(k_Ibar) + r + |I|} / prod_{J, I} (h_j! k_i!).
double term_prefactor(const SeriesSpec& spec, const SubsetContext& ctx);

/// T_{r,ell,J} with the outer sum over m_Jbar truncated to [1, M_outer]^|Jbar|.
/// For J = [r] the outer sum is empty and the value is exact.
PartialSum term_T(const SeriesSpec& spec, const SubsetContext& ctx, std::int64_t M_outer,
                  const EvalOptions& options = {});

struct TermResult {
  SubsetContext ctx;
  PartialSum sum;
};

struct RhsResult {
  /// Sum of the raw box values.
  Complex value{};
  /// Sum of the extrapolated values.
  Complex extrapolated{};
  std::vector<TermResult> per_J;
};

/// Sum of T_J over the 2^r - 1 non-empty subsets, in bitmask order.
RhsResult rhs_total(const SeriesSpec& spec, std::int64_t M_outer, const EvalOptions& options = {});

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict verdict);

struct CorollaryCheck {
  double re_zeta = 0.0;
  Complex half_rhs{};
  double residual = 0.0;
};

struct VerificationReport {
  SeriesSpec spec;
  std::int64_t M = 0;
  std::int64_t M_outer = 0;
  double tol = 0.0;
  ConvergenceVerdict convergence;
  PartialSum lhs_plus;
  PartialSum lhs_minus;
  /// (-1)^{wt(h)+wt(k)+r+1}
  int sign = 1;
  /// zeta(y) + sign * zeta(-y) from the extrapolated values.
  Complex lhs_combination{};
  RhsResult rhs;
  /// |lhs_combination - rhs.extrapolated|
  double residual = 0.0;
  /// Sum of every recorded tail estimate.
  double tail_slack = 0.0;
  /// wt(h) + wt(k) and r of different parity.
  bool different_parity = false;
  std::optional<CorollaryCheck> corollary;
  Verdict verdict = Verdict::Fail;
};

/// Checks zeta(y) + (-1)^{wt+r+1} zeta(-y) = sum_J T_J. Requires a convergence
/// verdict other than Unknown (Error(ConvergenceUnknown) otherwise). Pass when
/// every residual is within tol, Inconclusive when within tol + tail slack.
VerificationReport verify_parity(const SeriesSpec& spec, std::int64_t M, std::int64_t M_outer, double tol,
                                 const ConvergenceVerdict& convergence, const EvalOptions& options = {});

}  // namespace dparity
