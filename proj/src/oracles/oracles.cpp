#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dparity/evaluator.hpp"
#include "dparity/genfun.hpp"
#include "dparity/model.hpp"

namespace dparity::oracles {

namespace {

const Complex two_pi_i{0.0, 2.0 * std::numbers::pi};

// e(L) for a series L without constant term: sum_n (2 pi i L)^n / n!.
MultiSeries exp_unit(const MultiSeries& L) {
  const ShapePtr& shape = L.shape();
  MultiSeries result = MultiSeries::constant(shape, 1.0);
  MultiSeries power = MultiSeries::constant(shape, 1.0);
  for (int n = 1; n <= shape->total_cap(); ++n) {
    power = power * L;
    power *= two_pi_i / static_cast<double>(n);
    result += power;
  }
  return result;
}

// 2 pi i t_v / (e(t_v) - 1) = sum_n B_n (2 pi i t_v)^n / n!.
MultiSeries bernoulli_kernel(const ShapePtr& shape, std::size_t v) {
  const int cap = std::min(shape->caps()[v], shape->total_cap());
  const auto numbers = bernoulli_numbers(cap);
  MultiSeries out(shape);
  std::vector<int> exps(shape->num_vars(), 0);
  Complex scale = 1.0;
  for (int n = 0; n <= cap; ++n) {
    if (n > 0) scale *= two_pi_i / static_cast<double>(n);
    exps[v] = n;
    out.set(exps, to_double(numbers[static_cast<std::size_t>(n)]) * scale);
  }
  return out;
}

}  // namespace

std::vector<Rational> bernoulli_numbers(int n) {
  std::vector<Rational> out;
  std::vector<Rational> row(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    row[static_cast<std::size_t>(m)] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) {
      auto& a = row[static_cast<std::size_t>(j) - 1];
      a = j * (a - row[static_cast<std::size_t>(j)]);
      a.canonicalize();
    }
    out.push_back(row[0]);
  }
  // The algorithm yields B_1 = +1/2.
  if (n >= 1) out[1] = Rational(-1, 2);
  return out;
}

long double zeta_even(int two_n) {
  const auto numbers = bernoulli_numbers(two_n);
  long double value = std::abs(numbers[static_cast<std::size_t>(two_n)].get_d());
  for (int j = 1; j <= two_n; ++j) value *= 2.0L * std::numbers::pi_v<long double> / j;
  return value / 2.0L;
}

long double zeta3() {
  long double sum = 0.0L;
  long double central = 1.0L;  // binom(2n, n)
  for (int n = 1; n <= 40; ++n) {
    central = central * (2.0L * n) * (2.0L * n - 1.0L) / (static_cast<long double>(n) * n);
    const long double term = 1.0L / (static_cast<long double>(n) * n * n * central);
    sum += (n % 2 ? term : -term);
  }
  return 2.5L * sum;
}

long double symmetric_zeta(int h) { return h % 2 ? 0.0L : 2.0L * zeta_even(h); }

MultiSeries mt_closed_form_G(ShapePtr shape, const Rational& S) {
  const std::size_t n = shape->num_vars();
  const std::size_t row = n - 1;
  std::vector<Complex> xcoef(n, 1.0);
  xcoef[row] = -1.0;
  const MultiSeries x = MultiSeries::linear(shape, xcoef);

  // (e(x) - 1) / (S - x)
  MultiSeries quotient(shape);
  if (S == 0) {
    // -(e(x) - 1)/x = -sum_{k>=1} (2 pi i)^k x^{k-1} / k!
    MultiSeries power = MultiSeries::constant(shape, 1.0);
    Complex scale = 1.0;
    for (int k = 1; k <= shape->total_cap() + 1; ++k) {
      scale *= two_pi_i / static_cast<double>(k);
      quotient += power * (-scale);
      power = power * x;
    }
  } else {
    const double s = S.get_d();
    MultiSeries geometric = MultiSeries::constant(shape, 1.0 / s);
    MultiSeries power = geometric;
    for (int k = 1; k <= shape->total_cap(); ++k) {
      power = power * x;
      power *= 1.0 / s;
      geometric += power;
    }
    quotient = (exp_unit(x) - MultiSeries::constant(shape, 1.0)) * geometric;
  }

  std::vector<Complex> rcoef(n, 0.0);
  rcoef[row] = 1.0;
  MultiSeries g = exp_unit(MultiSeries::linear(shape, rcoef)) * quotient;
  g *= -1.0 / two_pi_i;
  for (std::size_t v = 0; v < n; ++v) g = g * bernoulli_kernel(shape, v);
  return g;
}

MultiSeries telescoping_lhs(ShapePtr shape) {
  const std::size_t n = shape->num_vars();
  MultiSeries sum(shape);
  MultiSeries prefix = MultiSeries::constant(shape, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Complex> c(n, 0.0);
    c[i] = 1.0;
    const MultiSeries ei = exp_unit(MultiSeries::linear(shape, c));
    sum += (ei - MultiSeries::constant(shape, 1.0)) * prefix;
    prefix = prefix * ei;
  }
  return sum;
}

MultiSeries telescoping_rhs(ShapePtr shape) {
  const std::vector<Complex> ones(shape->num_vars(), 1.0);
  return exp_unit(MultiSeries::linear(shape, ones)) - MultiSeries::constant(shape, 1.0);
}

double max_difference(const MultiSeries& a, const MultiSeries& b) { return (a - b).max_abs(); }

double max_normalized_difference(const MultiSeries& a, const MultiSeries& b) {
  const MultiSeries d = a - b;
  double worst = 0.0;
  for (auto slot : d.layout().live())
    worst = std::max(worst, std::abs(d.at_slot(slot)) / std::pow(2.0 * std::numbers::pi, d.layout().degree(slot)));
  return worst;
}

namespace {

SelfTestResult closed_form_case(const std::vector<std::int64_t>& h, std::int64_t k, const IndexSet& J,
                                std::int64_t outer) {
  const std::size_t r = h.size();
  const SeriesSpec spec = validate_spec({IntVector(r, 1)}, h, {k}, std::vector<Rational>(r, Rational(0)));
  const SubsetContext ctx = subset_context(spec, J);
  const IntVector m_outer(ctx.Jbar.size(), outer);
  const Lambda lambda = build_lambda(spec, ctx, m_outer);
  const GFAssembly g = compute_G(lambda, std::vector<Rational>(J.size(), Rational(0)), default_caps(spec, ctx));
  const MultiSeries expected =
      mt_closed_form_G(g.series.shape(), Rational(static_cast<long>(outer * static_cast<std::int64_t>(ctx.Jbar.size()))));
  const double diff = max_difference(g.series, expected);
  std::ostringstream os;
  os << "closed-form G, r=" << r << " J=" << format_set(J) << " caps=(";
  for (std::size_t q = 0; q < g.series.layout().caps().size(); ++q)
    os << (q ? "," : "") << g.series.layout().caps()[q];
  os << ")";
  std::ostringstream detail;
  detail << "max diff " << diff;
  return {os.str(), diff <= 1e-12 * std::max(1.0, expected.max_abs()), detail.str()};
}

}  // namespace

std::vector<SelfTestResult> run_selftest() {
  std::vector<SelfTestResult> out;

  out.push_back(closed_form_case({1, 1}, 1, {0, 1}, 0));
  out.push_back(closed_form_case({2, 2}, 1, {0, 1}, 0));
  out.push_back(closed_form_case({1, 2}, 2, {0, 1}, 0));
  out.push_back(closed_form_case({1, 1, 1}, 2, {0, 1, 2}, 0));
  out.push_back(closed_form_case({2, 1, 1}, 1, {0, 1, 2}, 0));
  out.push_back(closed_form_case({2, 2}, 1, {0}, 3));
  out.push_back(closed_form_case({1, 1, 2}, 1, {0, 2}, 2));

  for (std::size_t n = 2; n <= 4; ++n) {
    std::vector<VarTag> vars;
    for (std::size_t v = 0; v < n; ++v) vars.push_back({VarTag::Kind::Unit, v});
    const auto shape = make_shape(vars, std::vector<int>(n, 6), 6);
    const double diff = max_normalized_difference(telescoping_lhs(shape), telescoping_rhs(shape));
    std::ostringstream detail;
    detail << "max diff " << diff << " in the variables 2 pi i t";
    out.push_back({"telescoping identity, |J|=" + std::to_string(n), diff <= 1e-12, detail.str()});
  }

  {
    const auto reference = bernoulli_numbers(30);
    const auto& table = BernoulliTable::shared(30);
    bool same = true;
    for (int n = 0; n <= 30; ++n) same = same && table.number(n) == reference[static_cast<std::size_t>(n)];
    out.push_back({"Bernoulli numbers B_0..B_30", same, same ? "exact match" : "mismatch"});
  }

  for (int h : {2, 3, 4, 6}) {
    GeneratingFunction gf({VarTag{VarTag::Kind::Unit, 0}}, {{1}}, {Rational(0)}, {h});
    double fact = 1.0;
    for (int x = 2; x <= h; ++x) fact *= x;
    const Complex value = -gf.coefficient_D({Rational(0)}, {h}) / fact;
    const double expected = static_cast<double>(symmetric_zeta(h));
    const double diff = std::abs(value - Complex(expected, 0.0));
    std::ostringstream detail;
    detail << "-D/h! = " << value.real() << ", expected " << expected;
    out.push_back({"symmetric zeta via D, h=" + std::to_string(h), diff <= 1e-10, detail.str()});
  }

  {
    const SeriesSpec mt = validate_spec({{1, 1}}, {1, 1}, {1}, {Rational(0), Rational(0)});
    const PartialSum z = zeta_direct(mt, 600);
    const double expected = 2.0 * static_cast<double>(zeta3());
    const double diff = std::abs(z.extrapolated - Complex(expected, 0.0));
    std::ostringstream detail;
    detail << "extrapolated " << z.extrapolated.real() << " vs 2 zeta(3) = " << expected;
    out.push_back({"MT(1,1;1) = 2 zeta(3)", diff <= 1e-7, detail.str()});
  }
  return out;
}

}  // namespace dparity::oracles
