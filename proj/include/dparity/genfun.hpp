#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dparity/exact_linalg.hpp"
#include "dparity/model.hpp"
#include "dparity/mpseries.hpp"
#include "dparity/rational.hpp"

namespace dparity {

/// f = (vec, dot), evaluated as f(m_J) = <vec, m_J> + dot.
///
/// For f_j (j in J) vec is the unit vector of j inside J and dot = 0. For
/// f_{r+i} (i in I) vec = (a_ij)_{j in J} and dot = -sum_{j in Jbar} a_ij m_j,
/// an integer once the outer tuple m_Jbar is fixed.
struct AffineFunctional {
  IntVector vec;
  Rational dot;
  VarTag tag;
};

using Lambda = std::vector<AffineFunctional>;

/// {f_j : j in J} followed by {f_{r+i} : i in I}, both ascending.
/// `m_outer` has one entry per element of ctx.Jbar, in order.
Lambda build_lambda(const SeriesSpec& spec, const SubsetContext& ctx, const IntVector& m_outer);

/// Vector parts of a Lambda, the family every exact-linalg query runs on.
IntRows vector_parts(const Lambda& lambda);

/// Size-|J| subsets of Lambda whose vector parts are a basis, lexicographic in
/// Lambda order. Throws Error(RankDeficientLambda).
std::vector<Basis> enumerate_bases(const Lambda& lambda);

/// Policy for bases where some g outside B has d_g = 0. Those rational
/// factors are poles individually; in the sum over bases they cancel when G is
/// analytic. `Resolve` clears the common linear denominator and divides it out
/// exactly, failing only if a genuine pole remains. `Fatal` refuses such
/// configurations outright.
enum class SingularPolicy { Resolve, Fatal };

/// Everything in G that depends only on the vector parts of Lambda and on
/// y_J: bases, dual bases, cosets, rho and the oriented fractional parts.
/// Built once per (spec, J); `series(dots)` then evaluates G for any choice of
/// the scalar parts.
class GeneratingFunction {
 public:
  GeneratingFunction(std::vector<VarTag> tags, IntRows vectors, std::vector<Rational> y_J, std::vector<int> caps,
                     RhoLadder ladder = RhoLadder::Standard);
  GeneratingFunction(const Lambda& lambda, std::vector<Rational> y_J, std::vector<int> caps,
                     RhoLadder ladder = RhoLadder::Standard);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return tags_.size(); }
  const std::vector<VarTag>& tags() const { return tags_; }
  const std::vector<Basis>& bases() const { return bases_; }
  const RhoVector& rho() const { return rho_; }
  const ShapePtr& shape() const { return shape_; }
  /// {y_J + w}_{B,f} for basis b, coset index w and member position k.
  const Rational& fractional(std::size_t b, std::size_t w, std::size_t k) const {
    return bases_data_[b].fractional[w][k];
  }
  std::size_t coset_count(std::size_t b) const { return bases_data_[b].cosets.representatives.size(); }
  const RationalMatrix& dual(std::size_t b) const { return bases_data_[b].dual; }
  /// Least common denominator of all fractional parts; phases of G are
  /// periodic in the scalar parts with this period.
  const Integer& phase_period() const { return period_; }

  /// G(t, y_J; Lambda) truncated to the caps. `dots` has one entry per
  /// member of Lambda. `context` is quoted in SingularConfiguration messages.
  MultiSeries series(const std::vector<Rational>& dots, SingularPolicy policy = SingularPolicy::Resolve,
                     const std::string& context = {}) const;

  /// prod(exps!) * [t^exps] G.
  Complex coefficient_D(const std::vector<Rational>& dots, const std::vector<int>& exps,
                        SingularPolicy policy = SingularPolicy::Resolve, const std::string& context = {}) const;

 private:
  struct Outside {
    std::size_t g;
    /// <g, f^B> scattered to variable positions (zero off the basis).
    std::vector<Rational> pairings;
  };
  struct BasisData {
    RationalMatrix dual;
    CosetSet cosets;
    std::vector<Outside> outside;
    std::vector<std::vector<Rational>> fractional;
  };

  MultiSeries coset_average(std::size_t b, const std::vector<Rational>& dots, const ShapePtr& shape) const;
  MultiSeries divided(const std::vector<Rational>& dots, const std::vector<std::vector<Rational>>& d,
                      const std::string& context) const;

  std::vector<VarTag> tags_;
  IntRows vectors_;
  std::vector<Rational> y_;
  std::size_t dim_ = 0;
  std::vector<Basis> bases_;
  std::vector<BasisData> bases_data_;
  RhoVector rho_;
  ShapePtr shape_;
  Integer period_ = 1;
};

/// G together with the data it was assembled from.
struct GFAssembly {
  Lambda lambda;
  std::vector<Basis> bases;
  RhoVector rho;
  MultiSeries series;
};

/// Caps (h_J, k_I) laid out in Lambda order.
std::vector<int> default_caps(const SeriesSpec& spec, const SubsetContext& ctx);

GFAssembly compute_G(const Lambda& lambda, const std::vector<Rational>& y_J, const std::vector<int>& caps,
                     RhoLadder ladder = RhoLadder::Standard, SingularPolicy policy = SingularPolicy::Resolve);

/// D = prod(exps!) * coefficient of t^exps in G. Throws Error(CapExceeded).
Complex extract_D(const GFAssembly& assembly, const std::vector<int>& exps);

/// Z_M: sum over m in Z^|J|, |m_j| <= M, with every functional nonzero, of
/// e(<m, y_J>) prod_f f(m)^{-exps_f}.
Complex z_partial_sum(const Lambda& lambda, const std::vector<int>& exps, const std::vector<Rational>& y_J,
                      std::int64_t M);

}  // namespace dparity
