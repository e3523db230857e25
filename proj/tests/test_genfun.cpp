#include <doctest.h>

#include <numbers>

#include "dparity/error.hpp"
#include "dparity/evaluator.hpp"
#include "dparity/genfun.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dparity;
using testing::q;
using testing::zeros;

namespace {

constexpr double pi = std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int x = 2; x <= n; ++x) f *= x;
  return f;
}

// (-1)^{|Lambda|} D / prod(exps!), the limit of the symmetric sums Z_M.
Complex z_limit(const Lambda& lambda, const std::vector<Rational>& y_J, const std::vector<int>& exps,
                RhoLadder ladder = RhoLadder::Standard) {
  const GFAssembly g = compute_G(lambda, y_J, exps, ladder);
  Complex value = extract_D(g, exps);
  for (int e : exps) value /= factorial(e);
  return lambda.size() % 2 ? -value : value;
}

// Richardson step for a sum whose error is O(1/M): 2 Z_{2M} - Z_M.
Complex z_richardson(const Lambda& lambda, const std::vector<int>& exps, const std::vector<Rational>& y_J, std::int64_t M) {
  return 2.0 * z_partial_sum(lambda, exps, y_J, 2 * M) - z_partial_sum(lambda, exps, y_J, M);
}

}  // namespace

TEST_SUITE("genfun") {
  TEST_CASE("build_lambda examples") {
    const SeriesSpec mt3 = testing::mt({1, 1, 1}, 1);
    Lambda lambda = build_lambda(mt3, subset_context(mt3, {0, 1, 2}), {});
    REQUIRE(lambda.size() == 4);
    CHECK(lambda[0].vec == IntVector{1, 0, 0});
    CHECK(lambda[2].vec == IntVector{0, 0, 1});
    CHECK(lambda[3].vec == IntVector{1, 1, 1});
    CHECK(lambda[3].dot == 0);
    CHECK(lambda[3].tag == VarTag{VarTag::Kind::Row, 0});

    const SeriesSpec mt2 = testing::mt({1, 1}, 1);
    lambda = build_lambda(mt2, subset_context(mt2, {0}), {5});
    REQUIRE(lambda.size() == 2);
    CHECK(lambda[0].vec == IntVector{1});
    CHECK(lambda[0].dot == 0);
    CHECK(lambda[1].vec == IntVector{1});
    CHECK(lambda[1].dot == -5);

    const SeriesSpec diag = validate_spec({{1, 0}, {0, 1}}, {1, 1}, {1, 1}, zeros(2));
    lambda = build_lambda(diag, subset_context(diag, {0}), {7});
    REQUIRE(lambda.size() == 2);
    CHECK(lambda[1].vec == IntVector{1});
    CHECK(lambda[1].dot == 0);
    CHECK(lambda[1].tag == VarTag{VarTag::Kind::Row, 0});
  }

  TEST_CASE("enumerate_bases examples") {
    const SeriesSpec mt3 = testing::mt({1, 1, 1}, 1);
    const auto bases = enumerate_bases(build_lambda(mt3, subset_context(mt3, {0, 1, 2}), {}));
    REQUIRE(bases.size() == 4);
    CHECK(bases[0].members == IndexSet{0, 1, 2});
    CHECK(bases[1].members == IndexSet{0, 1, 3});
    CHECK(bases[3].members == IndexSet{1, 2, 3});

    const SeriesSpec mt2 = testing::mt({1, 1}, 1);
    CHECK(enumerate_bases(build_lambda(mt2, subset_context(mt2, {0}), {1})).size() == 2);

    // f_{r+1} = (2, 0) is parallel to f_1: {f_1, f_3} is excluded.
    const SeriesSpec flat = validate_spec({{2, 0}, {0, 1}}, {1, 1}, {1, 1}, zeros(2));
    const auto flat_bases = enumerate_bases(build_lambda(flat, subset_context(flat, {0, 1}), {}));
    for (const auto& b : flat_bases) CHECK(b.members != IndexSet{0, 2});
  }

  TEST_CASE("compute_G matches the Mordell-Tornheim closed form") {
    struct Case {
      IntVector h;
      std::int64_t k;
      IndexSet J;
      std::int64_t outer;
    };
    const std::vector<Case> cases{{{1, 1}, 1, {0, 1}, 0},    {{2, 2}, 1, {0, 1}, 0},   {{1, 1}, 3, {0, 1}, 0},
                                  {{1, 1, 1}, 2, {0, 1, 2}, 0}, {{1, 2, 1}, 1, {0, 1, 2}, 0},
                                  {{2, 2}, 1, {0}, 4},      {{1, 1, 1}, 2, {1}, 3},   {{1, 2, 1}, 1, {0, 2}, 2}};
    for (const auto& c : cases) {
      const SeriesSpec spec = testing::mt(c.h, c.k);
      const auto ctx = subset_context(spec, c.J);
      const IntVector outer(ctx.Jbar.size(), c.outer);
      const GFAssembly g = compute_G(build_lambda(spec, ctx, outer), zeros(c.J.size()), default_caps(spec, ctx));
      const MultiSeries expected =
          oracles::mt_closed_form_G(g.series.shape(), q(c.outer * static_cast<std::int64_t>(ctx.Jbar.size())));
      CAPTURE(format_set(c.J));
      CHECK(oracles::max_difference(g.series, expected) < 1e-12 * std::max(1.0, expected.max_abs()));
      if (spec.weight() <= 5) CHECK(oracles::max_difference(g.series, expected) < 1e-12);
    }
  }

  TEST_CASE("G factorizes when Lambda has only unit functionals") {
    const std::vector<Rational> y{q(1, 3), q(3, 4)};
    GeneratingFunction gf({VarTag{VarTag::Kind::Unit, 0}, VarTag{VarTag::Kind::Unit, 1}}, {{1, 0}, {0, 1}}, y, {3, 4});
    const MultiSeries g = gf.series({q(0), q(0)});
    const MultiSeries expected = bernoulli_factor(gf.shape(), 0, y[0], 1.0) * bernoulli_factor(gf.shape(), 1, y[1], 1.0);
    CHECK(oracles::max_difference(g, expected) < 1e-12);
  }

  TEST_CASE("extract_D for |J| = 1 reproduces symmetric zeta values") {
    for (int h : {2, 3, 4, 6}) {
      GeneratingFunction gf({VarTag{VarTag::Kind::Unit, 0}}, {{1}}, {q(0)}, {h});
      const Complex d = gf.coefficient_D({q(0)}, {h});
      CAPTURE(h);
      CHECK(std::abs(-d / factorial(h) - Complex(static_cast<double>(oracles::symmetric_zeta(h)), 0.0)) < 1e-10);
      if (h == 2) CHECK(std::abs(d - Complex(-2.0 * pi * pi / 3.0, 0.0)) < 1e-12);
      if (h == 3) CHECK(std::abs(d.real()) < 1e-12);
    }
  }

  TEST_CASE("J = [r] Mordell-Tornheim D equals the closed-form coefficient") {
    const SeriesSpec spec = testing::mt({1, 1}, 1);
    const auto ctx = subset_context(spec, {0, 1});
    const GFAssembly g = compute_G(build_lambda(spec, ctx, {}), zeros(2), default_caps(spec, ctx));
    const MultiSeries closed = oracles::mt_closed_form_G(g.series.shape(), q(0));
    CHECK(std::abs(extract_D(g, {1, 1, 1}) - closed.coefficient({1, 1, 1})) < 1e-12);
    CHECK_THROWS_AS(extract_D(g, {2, 1, 1}), Error);
  }

  TEST_CASE("singular configurations: resolved by default, refused under Fatal") {
    const SeriesSpec spec = testing::mt({1, 1}, 1);
    const auto ctx = subset_context(spec, {0, 1});
    const Lambda lambda = build_lambda(spec, ctx, {});
    CHECK_NOTHROW(compute_G(lambda, zeros(2), default_caps(spec, ctx)));
    try {
      compute_G(lambda, zeros(2), default_caps(spec, ctx), RhoLadder::Standard, SingularPolicy::Fatal);
      FAIL("expected SingularConfiguration");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SingularConfiguration);
    }
  }

  TEST_CASE("D is rho-invariant") {
    struct Case {
      IntRows A;
      IntVector h, k;
      std::vector<Rational> y;
      IndexSet J;
      IntVector outer;
    };
    const std::vector<Case> cases{
        {{{1, 1}}, {1, 1}, {1}, zeros(2), {0}, {3}},
        {{{1, 1}}, {2, 2}, {2}, {q(1, 2), q(0)}, {0, 1}, {}},
        {{{1, 1, 1}}, {1, 1, 1}, {1}, zeros(3), {0, 1}, {2}},
        {{{1, 1, 1}}, {1, 2, 1}, {2}, {q(1, 3), q(1, 7), q(0)}, {0, 1, 2}, {}},
        {{{1, 0}, {0, 1}, {1, 1}}, {1, 1}, {1, 1, 1}, zeros(2), {0, 1}, {}},
        {{{2, 1}}, {2, 1}, {1}, {q(1, 5), q(0)}, {0}, {4}},
        {{{2, 1}, {1, 3}}, {1, 1}, {1, 2}, zeros(2), {0, 1}, {}},
    };
    for (const auto& c : cases) {
      const SeriesSpec spec = validate_spec(c.A, c.h, c.k, c.y);
      const auto ctx = subset_context(spec, c.J);
      std::vector<Complex> values;
      for (auto ladder : {RhoLadder::Standard, RhoLadder::Reversed, RhoLadder::Negated}) {
        EvalOptions options;
        options.rho = ladder;
        const GeneratingFunction gf = prepare_generating_function(spec, ctx, options);
        values.push_back(coefficient_D(spec, ctx, gf, c.outer));
      }
      CAPTURE(format_set(c.J));
      for (const auto& v : values) CHECK(std::abs(v - values[0]) <= 1e-10 * std::max(1.0, std::abs(values[0])));
    }
  }

  TEST_CASE("symmetric partial sums approach (-1)^|Lambda| D / prod(h! k!)") {
    struct Case {
      IntRows A;
      IntVector h, k;
      std::vector<Rational> y;
      IndexSet J;
      IntVector outer;
      std::int64_t M;
      double tol;
    };
    const std::vector<Case> cases{
        // |J| = 1 with an outer variable: D is a polynomial in pi i and 1/m_2.
        {{{1, 1}}, {2, 2}, {1}, zeros(2), {0}, {3}, 4000, 1e-5},
        {{{1, 1}}, {1, 1}, {1}, zeros(2), {0}, {2}, 4000, 1e-5},
        // Twisted, and a non-unimodular row (2 m_1 - m_2 vanishes nowhere for odd m_2).
        {{{1, 1}}, {2, 1}, {2}, {q(1, 3), q(0)}, {0}, {5}, 4000, 1e-5},
        {{{2, 1}}, {2, 1}, {1}, zeros(2), {0}, {3}, 4000, 1e-5},
        {{{2, 1}}, {1, 1}, {2}, {q(1, 4), q(0)}, {0}, {1}, 4000, 1e-5},
        // |J| = 2 with a row touching both.
        {{{1, 1}}, {2, 2}, {2}, zeros(2), {0, 1}, {}, 150, 2e-3},
        {{{1, 0}, {0, 1}, {1, 1}}, {1, 1}, {1, 1, 2}, zeros(2), {0, 1}, {}, 150, 2e-3},
    };
    for (const auto& c : cases) {
      const SeriesSpec spec = validate_spec(c.A, c.h, c.k, c.y);
      const auto ctx = subset_context(spec, c.J);
      const Lambda lambda = build_lambda(spec, ctx, c.outer);
      std::vector<Rational> y_J;
      for (auto j : ctx.J) y_J.push_back(spec.y()[j]);
      std::vector<int> exps;
      for (auto j : ctx.J) exps.push_back(static_cast<int>(spec.h()[j]));
      for (auto i : ctx.I) exps.push_back(static_cast<int>(spec.k()[i]));
      const Complex limit = z_limit(lambda, y_J, exps);
      const Complex estimate = z_richardson(lambda, exps, y_J, c.M);
      CAPTURE(format_set(c.J));
      CAPTURE(limit);
      CAPTURE(estimate);
      CHECK(std::abs(limit - estimate) < c.tol);
    }
  }

  TEST_CASE("z_partial_sum skips vanishing functionals") {
    // f_1 = m, f_2 = m - 2: the m = 0 and m = 2 terms are excluded.
    const SeriesSpec spec = testing::mt({1, 1}, 1);
    const Lambda lambda = build_lambda(spec, subset_context(spec, {0}), {2});
    const Complex z = z_partial_sum(lambda, {1, 1}, {q(0)}, 3);
    // m in {-3,-2,-1,1,3}: 1/15 + 1/8 + 1/3 - 1 + 1/3
    CHECK(std::abs(z - Complex(1.0 / 15 + 1.0 / 8 + 1.0 / 3 - 1.0 + 1.0 / 3, 0.0)) < 1e-15);
  }
}
