#pragma once

#include <string>
#include <vector>

#include "dparity/mpseries.hpp"
#include "dparity/rational.hpp"

// Closed-form reference values. Nothing here calls the generating-function
// code, so agreement with it is a genuine cross-check.
namespace dparity::oracles {

/// B_0..B_n (B_1 = -1/2) by the Akiyama-Tanigawa algorithm.
std::vector<Rational> bernoulli_numbers(int n);

/// zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!).
long double zeta_even(int two_n);

/// zeta(3) = (5/2) sum_{n>=1} (-1)^{n+1} / (n^3 binom(2n, n)).
long double zeta3();

/// sum_{m != 0} m^{-h}: (1 + (-1)^h) zeta(h) for even h, 0 for odd h.
long double symmetric_zeta(int h);

/// The Mordell-Tornheim generating function at y = 0,
///
///   -e(t_R)/(2 pi i) * (e(x) - 1)/(S - x) * prod_{v} 2 pi i t_v/(e(t_v) - 1),
///
/// with x = sum of the unit variables - t_R, t_R the single row variable and
/// S = sum_{j in Jbar} m_j. The shape's variables are the |J| unit variables
/// followed by the row variable.
MultiSeries mt_closed_form_G(ShapePtr shape, const Rational& S);

/// Both sides of sum_{i} (e(t_i) - 1) prod_{j < i} e(t_j) = e(sum t_j) - 1 over
/// every variable of the shape.
MultiSeries telescoping_lhs(ShapePtr shape);
MultiSeries telescoping_rhs(ShapePtr shape);

/// Largest coefficientwise difference of two series on the same shape.
double max_difference(const MultiSeries& a, const MultiSeries& b);

/// Same, with the coefficient of t^e divided by (2 pi)^{|e|}: the comparison
/// in the variables 2 pi i t, where e(t) has rational Taylor coefficients.
double max_normalized_difference(const MultiSeries& a, const MultiSeries& b);

struct SelfTestResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Closed form of G, telescoping identity, Bernoulli and zeta checks.
std::vector<SelfTestResult> run_selftest();

}  // namespace dparity::oracles
