#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "dparity/rational.hpp"

namespace dparity {

/// Names one variable t_f of a series: t_j for f = f_j (unit functional) or
/// t_{r+i} for f = f_{r+i} (row functional). Indices are zero-based.
struct VarTag {
  enum class Kind { Unit, Row };
  Kind kind = Kind::Unit;
  std::size_t index = 0;

  std::string label() const;
  friend bool operator==(const VarTag&, const VarTag&) = default;
};

/// Variables plus truncation: a monomial t^e is kept iff e_v <= caps[v] for
/// every variable and sum(e) <= total_cap.
class SeriesShape {
 public:
  SeriesShape(std::vector<VarTag> vars, std::vector<int> caps, int total_cap);
  /// total cap = sum of the per-variable caps.
  SeriesShape(std::vector<VarTag> vars, std::vector<int> caps);

  std::size_t num_vars() const { return vars_.size(); }
  const std::vector<VarTag>& vars() const { return vars_; }
  const std::vector<int>& caps() const { return caps_; }
  int total_cap() const { return total_cap_; }

  /// Dense mixed-radix storage size.
  std::size_t storage_size() const { return size_; }
  /// Storage slots inside the truncation, sorted by total degree.
  const std::vector<std::size_t>& live() const { return live_; }
  int degree(std::size_t slot) const { return degree_[slot]; }
  int exponent(std::size_t slot, std::size_t var) const { return exps_[slot * vars_.size() + var]; }
  std::size_t stride(std::size_t var) const { return strides_[var]; }

  bool contains(const std::vector<int>& exps) const;
  std::size_t slot(const std::vector<int>& exps) const;

  friend bool operator==(const SeriesShape& a, const SeriesShape& b) {
    return a.vars_ == b.vars_ && a.caps_ == b.caps_ && a.total_cap_ == b.total_cap_;
  }

 private:
  std::vector<VarTag> vars_;
  std::vector<int> caps_;
  int total_cap_;
  std::size_t size_ = 1;
  std::vector<std::size_t> strides_;
  std::vector<int> exps_;
  std::vector<int> degree_;
  std::vector<std::size_t> live_;
};

using ShapePtr = std::shared_ptr<const SeriesShape>;

ShapePtr make_shape(std::vector<VarTag> vars, std::vector<int> caps);
ShapePtr make_shape(std::vector<VarTag> vars, std::vector<int> caps, int total_cap);

/// Truncated multivariate power series with complex coefficients.
class MultiSeries {
 public:
  explicit MultiSeries(ShapePtr shape);

  static MultiSeries constant(ShapePtr shape, Complex value);
  static MultiSeries variable(ShapePtr shape, std::size_t var);
  /// sum_v coeffs[v] t_v.
  static MultiSeries linear(ShapePtr shape, const std::vector<Complex>& coeffs);

  const ShapePtr& shape() const { return shape_; }
  const SeriesShape& layout() const { return *shape_; }

  /// Stored coefficient; zero for monomials outside the stored support.
  /// Throws Error(CapExceeded) if `exps` lies outside the truncation.
  Complex coefficient(const std::vector<int>& exps) const;
  void set(const std::vector<int>& exps, Complex value);
  Complex constant_term() const { return coeffs_[0]; }

  Complex& at_slot(std::size_t slot) { return coeffs_[slot]; }
  Complex at_slot(std::size_t slot) const { return coeffs_[slot]; }

  double max_abs() const;

  MultiSeries& operator+=(const MultiSeries& other);
  MultiSeries& operator-=(const MultiSeries& other);
  MultiSeries& operator*=(Complex scalar);

  friend MultiSeries operator+(MultiSeries a, const MultiSeries& b) { return a += b; }
  friend MultiSeries operator-(MultiSeries a, const MultiSeries& b) { return a -= b; }
  friend MultiSeries operator*(MultiSeries a, Complex s) { return a *= s; }
  friend MultiSeries operator*(Complex s, MultiSeries a) { return a *= s; }
  /// Cauchy product truncated to the common shape.
  friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b);

 private:
  void require_same_shape(const MultiSeries& other) const;

  ShapePtr shape_;
  std::vector<Complex> coeffs_;
};

/// Multiplicative inverse of a series with a nonzero constant term. The
/// constant term must exceed `threshold` times the largest coefficient in
/// magnitude, else Error(NonUnitSeries).
MultiSeries invert_unit(const MultiSeries& s, double threshold = 1e-12);

/// Copies the coefficients of `s` that fit into `target` (variables must match).
MultiSeries restrict_to(const MultiSeries& s, ShapePtr target);

struct LinearDivision {
  MultiSeries quotient;
  double remainder = 0.0;
};

/// Exact quotient of `s` by the linear form sum_v form[v] t_v, assuming the
/// division is exact. The pivot variable (by default the first with a nonzero
/// coefficient) must be capped by the total degree alone; other variables may
/// carry tighter caps. Returns the quotient (total degree one less) and the
/// largest remainder coefficient encountered, which is zero up to rounding
/// when the division is exact.
inline constexpr std::size_t first_nonzero = static_cast<std::size_t>(-1);
LinearDivision divide_by_linear_form(const MultiSeries& s, const std::vector<Rational>& form,
                                     std::size_t pivot = first_nonzero);

/// e(sum_v coeffs[v] t_v) = exp(2 pi i sum_v coeffs[v] t_v).
MultiSeries unit_exp(ShapePtr shape, const std::vector<Rational>& coeffs);

/// Exact Bernoulli numbers and polynomials up to a fixed degree.
class BernoulliTable {
 public:
  explicit BernoulliTable(int max_degree);

  int max_degree() const { return static_cast<int>(numbers_.size()) - 1; }
  /// B_n = B_n(0), with B_1 = -1/2.
  const Rational& number(int n) const { return numbers_.at(static_cast<std::size_t>(n)); }
  /// Coefficients c_0..c_n of B_n(x) = sum c_j x^j.
  const std::vector<Rational>& polynomial(int n) const { return polys_.at(static_cast<std::size_t>(n)); }
  Rational evaluate(int n, const Rational& x) const;

  /// Process-wide table grown on demand; the returned reference stays valid.
  static const BernoulliTable& shared(int max_degree);

 private:
  std::vector<Rational> numbers_;
  std::vector<std::vector<Rational>> polys_;
};

/// phase * 2 pi i t e(t c) / (e(t) - 1) in the variable `var`,
///   = phase * sum_n B_n(c) (2 pi i)^n t^n / n!.
MultiSeries bernoulli_factor(ShapePtr shape, std::size_t var, const Rational& c, Complex phase);

/// (-t_g / d) * sum_n (L(t)/d)^n with L(t) = t_g - sum_f pairing[f] t_f; that
/// is, -t_g / (d - L(t)). `pairings` has one entry per variable (zero for
/// variables not in the basis). Throws Error(SingularConfiguration) if d = 0.
MultiSeries rational_factor(ShapePtr shape, std::size_t g, Complex d, const std::vector<Rational>& pairings);

}  // namespace dparity
