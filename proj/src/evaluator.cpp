#include "dparity/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include <Eigen/Dense>

#include "dparity/error.hpp"
#include "dparity/summation.hpp"

namespace dparity {

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Sums summand(m) over each max-norm shell of [1, M]^dims. Every shell is
// reduced by a single thread in a fixed order, so results do not depend on
// the thread count. shells[0] is unused.
template <class Summand>
std::vector<Complex> shell_sums(std::size_t dims, std::int64_t M, unsigned threads, const Summand& summand) {
  std::vector<Complex> shells(static_cast<std::size_t>(M) + 1);
  std::atomic<std::int64_t> next{1};
  auto worker = [&] {
    IntVector m(dims);
    for (;;) {
      const std::int64_t N = next.fetch_add(1);
      if (N > M) return;
      CompensatedSum acc;
      // The first coordinate equal to N sits at position p; earlier
      // coordinates stay below N.
      for (std::size_t p = 0; p < dims; ++p) {
        for (std::size_t q = 0; q < dims; ++q) m[q] = 1;
        m[p] = N;
        if (p > 0 && N == 1) continue;
        for (;;) {
          acc.add(summand(m));
          std::size_t q = dims;
          bool advanced = false;
          while (q > 0) {
            --q;
            if (q == p) continue;
            const std::int64_t limit = q < p ? N - 1 : N;
            if (++m[q] <= limit) {
              advanced = true;
              break;
            }
            m[q] = 1;
          }
          if (!advanced) break;
        }
      }
      shells[static_cast<std::size_t>(N)] = acc.value();
    }
  };
  const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::int64_t>(M, 1)));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return shells;
}

std::vector<Complex> cumulative(const std::vector<Complex>& shells) {
  std::vector<Complex> out(shells.size());
  CompensatedSum acc;
  for (std::size_t n = 1; n < shells.size(); ++n) {
    acc.add(shells[n]);
    out[n] = acc.value();
  }
  return out;
}

// Largest shell magnitude among the last `period` shells.
double outer_shell(const std::vector<Complex>& shells, std::int64_t period) {
  double m = 0.0;
  const auto M = static_cast<std::int64_t>(shells.size()) - 1;
  for (std::int64_t n = std::max<std::int64_t>(1, M - period + 1); n <= M; ++n)
    m = std::max(m, std::abs(shells[static_cast<std::size_t>(n)]));
  return m;
}

std::int64_t lcm_of_denominators(const std::vector<Rational>& values, Integer start = 1) {
  for (const auto& v : values) mpz_lcm(start.get_mpz_t(), start.get_mpz_t(), v.get_den_mpz_t());
  return to_int64(start);
}

// Fills in the tail fields of `sum` from its shells.
void finish_partial_sum(PartialSum& sum, const std::vector<Complex>& shells, std::int64_t period, int exponent,
                        int log_power) {
  auto cum = cumulative(shells);
  sum.value = cum.back();
  sum.extrapolated = sum.value;
  const double outer = outer_shell(shells, period);
  if (outer == 0.0) return;
  sum.tail_exponent = exponent;
  if (exponent < 1) {
    sum.slow = true;
    sum.tail_estimate = outer;
    return;
  }
  sum.tail_estimate = outer * static_cast<double>(sum.M) / exponent;
  auto fit = extrapolate_tail(cum, period, exponent, log_power);
  if (fit.fitted) {
    sum.extrapolated = fit.value;
    sum.extrapolation_error = fit.error;
  } else {
    sum.extrapolation_error = sum.tail_estimate;
  }
}

std::vector<Complex> phase_table(std::int64_t q) {
  std::vector<Complex> table(static_cast<std::size_t>(q));
  for (std::int64_t t = 0; t < q; ++t) table[static_cast<std::size_t>(t)] = unit_phase(make_rational(t, q));
  return table;
}

double inverse_power(double base, std::int64_t exponent) { return 1.0 / std::pow(base, static_cast<double>(exponent)); }

}  // namespace

Extrapolation extrapolate_tail(const std::vector<Complex>& cumulative, std::int64_t period, int exponent,
                               int log_power) {
  Extrapolation out;
  const auto M = static_cast<std::int64_t>(cumulative.size()) - 1;
  if (M < 1) return out;
  out.value = cumulative.back();
  period = std::max<std::int64_t>(period, 1);
  log_power = std::max(log_power, 0);

  std::vector<std::int64_t> samples;
  for (std::int64_t n = M; n >= std::max<std::int64_t>(1, M / 4); n -= period) samples.push_back(n);

  auto fit = [&](int orders) -> std::optional<Complex> {
    const int columns = 1 + orders * (log_power + 1);
    if (static_cast<int>(samples.size()) < columns + 3) return std::nullopt;
    Eigen::MatrixXd X(samples.size(), columns);
    Eigen::MatrixXd Y(samples.size(), 2);
    const double log_m = std::log(static_cast<double>(M));
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const double n = static_cast<double>(samples[s]);
      const double x = n / static_cast<double>(M);
      const double log_ratio = std::log(n) / log_m;
      X(static_cast<Eigen::Index>(s), 0) = 1.0;
      int col = 1;
      for (int a = exponent; a < exponent + orders; ++a)
        for (int b = 0; b <= log_power; ++b) X(static_cast<Eigen::Index>(s), col++) = std::pow(x, -a) * std::pow(log_ratio, b);
      const Complex v = cumulative[static_cast<std::size_t>(samples[s])];
      Y(static_cast<Eigen::Index>(s), 0) = v.real();
      Y(static_cast<Eigen::Index>(s), 1) = v.imag();
    }
    Eigen::VectorXd scale = X.colwise().maxCoeff();
    for (Eigen::Index c = 0; c < X.cols(); ++c) X.col(c) /= scale(c);
    Eigen::MatrixXd coef = X.colPivHouseholderQr().solve(Y);
    return Complex(coef(0, 0) / scale(0), coef(0, 1) / scale(0));
  };

  auto high = fit(3);
  auto low = fit(2);
  if (!high || !low) return out;
  out.value = *high;
  out.error = std::abs(*high - *low);
  out.fitted = true;
  return out;
}

int direct_tail_exponent(const SeriesSpec& spec) {
  const std::size_t r = spec.r();
  int best = -1;
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    std::int64_t degree = 0, size = 0;
    for (std::size_t j = 0; j < r; ++j)
      if (mask & (std::size_t{1} << j)) degree += spec.h()[j], ++size;
    for (std::size_t i = 0; i < spec.ell(); ++i) {
      bool touches = false;
      for (std::size_t j = 0; j < r; ++j) touches = touches || ((mask >> j) & 1U && spec.a(i, j) != 0);
      if (touches) degree += spec.k()[i];
    }
    const int p = static_cast<int>(degree - size);
    if (best < 0 || p < best) best = p;
  }
  return best;
}

PartialSum zeta_direct(const SeriesSpec& spec, std::int64_t M, const EvalOptions& options) {
  if (M < 1) throw Error(ErrorKind::DimensionMismatch, "M must be positive");
  const std::size_t r = spec.r(), ell = spec.ell();
  const std::int64_t q = lcm_of_denominators(spec.y());
  std::vector<std::int64_t> twist(r);
  for (std::size_t j = 0; j < r; ++j) twist[j] = to_int64(Integer(spec.y()[j] * Rational(static_cast<long>(q))));
  const auto phases = phase_table(q);

  std::vector<std::vector<double>> inv_m(r, std::vector<double>(static_cast<std::size_t>(M) + 1));
  for (std::size_t j = 0; j < r; ++j)
    for (std::int64_t m = 1; m <= M; ++m) inv_m[j][static_cast<std::size_t>(m)] = inverse_power(static_cast<double>(m), spec.h()[j]);
  const std::int64_t top = spec.max_row_sum() * M;
  std::vector<std::vector<double>> inv_form(ell, std::vector<double>(static_cast<std::size_t>(top) + 1));
  for (std::size_t i = 0; i < ell; ++i)
    for (std::int64_t v = 1; v <= top; ++v) inv_form[i][static_cast<std::size_t>(v)] = inverse_power(static_cast<double>(v), spec.k()[i]);

  auto summand = [&](const IntVector& m) {
    double magnitude = 1.0;
    std::int64_t t = 0;
    for (std::size_t j = 0; j < r; ++j) {
      magnitude *= inv_m[j][static_cast<std::size_t>(m[j])];
      t += twist[j] * (m[j] % q);
    }
    for (std::size_t i = 0; i < ell; ++i) {
      std::int64_t form = 0;
      for (std::size_t j = 0; j < r; ++j) form += spec.a(i, j) * m[j];
      magnitude *= inv_form[i][static_cast<std::size_t>(form)];
    }
    return phases[static_cast<std::size_t>(t % q)] * magnitude;
  };

  PartialSum out;
  out.M = M;
  out.terms_summed = 1;
  for (std::size_t j = 0; j < r; ++j) out.terms_summed *= static_cast<std::uint64_t>(M);
  auto shells = shell_sums(r, M, resolve_threads(options.threads), summand);
  finish_partial_sum(out, shells, q, direct_tail_exponent(spec), static_cast<int>(r) - 1);
  return out;
}

GeneratingFunction prepare_generating_function(const SeriesSpec& spec, const SubsetContext& ctx,
                                               const EvalOptions& options) {
  Lambda lambda = build_lambda(spec, ctx, IntVector(ctx.Jbar.size(), 1));
  std::vector<Rational> y_J;
  for (auto j : ctx.J) y_J.push_back(spec.y()[j]);
  return GeneratingFunction(lambda, std::move(y_J), default_caps(spec, ctx), options.rho);
}

namespace {

std::vector<Rational> lambda_dots(const SeriesSpec& spec, const SubsetContext& ctx, const IntVector& m_outer) {
  std::vector<Rational> dots(ctx.J.size(), Rational(0));
  for (auto i : ctx.I) {
    std::int64_t outer = 0;
    for (std::size_t q = 0; q < ctx.Jbar.size(); ++q) outer += spec.a(i, ctx.Jbar[q]) * m_outer[q];
    dots.emplace_back(static_cast<long>(-outer));
  }
  return dots;
}

std::string outer_context(const SubsetContext& ctx, const IntVector& m_outer) {
  std::string s = "J=" + format_set(ctx.J) + ", m_Jbar=(";
  for (std::size_t q = 0; q < m_outer.size(); ++q) s += (q ? "," : "") + std::to_string(m_outer[q]);
  return s + ")";
}

std::vector<int> target_exponents(const SeriesSpec& spec, const SubsetContext& ctx) { return default_caps(spec, ctx); }

}  // namespace

Complex coefficient_D(const SeriesSpec& spec, const SubsetContext& ctx, const GeneratingFunction& gf,
                      const IntVector& m_outer, SingularPolicy policy) {
  return gf.coefficient_D(lambda_dots(spec, ctx, m_outer), target_exponents(spec, ctx), policy,
                          outer_context(ctx, m_outer));
}

double term_prefactor(const SeriesSpec& spec, const SubsetContext& ctx) {
  const std::int64_t parity = weight_of(spec.h(), ctx.Jbar) + weight_of(spec.k(), ctx.Ibar) +
                              static_cast<std::int64_t>(spec.r() + ctx.I.size());
  double value = parity % 2 == 0 ? 1.0 : -1.0;
  auto factorial = [](std::int64_t n) {
    double f = 1.0;
    for (std::int64_t x = 2; x <= n; ++x) f *= static_cast<double>(x);
    return f;
  };
  for (auto j : ctx.J) value /= factorial(spec.h()[j]);
  for (auto i : ctx.I) value /= factorial(spec.k()[i]);
  return value;
}

PartialSum term_T(const SeriesSpec& spec, const SubsetContext& ctx, std::int64_t M_outer, const EvalOptions& options) {
  if (ctx.I.empty()) throw Error(ErrorKind::RankDeficientLambda, "I is empty for J = " + format_set(ctx.J));
  const GeneratingFunction gf = prepare_generating_function(spec, ctx, options);
  const double prefactor = term_prefactor(spec, ctx);
  PartialSum out;

  if (ctx.Jbar.empty()) {
    out.value = prefactor * coefficient_D(spec, ctx, gf, {}, options.singular);
    out.extrapolated = out.value;
    out.terms_summed = 1;
    return out;
  }
  if (M_outer < 1) throw Error(ErrorKind::DimensionMismatch, "M_outer must be positive");

  const std::size_t outer_dims = ctx.Jbar.size();
  std::vector<Rational> y_outer;
  for (auto j : ctx.Jbar) y_outer.push_back(spec.y()[j]);
  const std::int64_t q = lcm_of_denominators(y_outer);
  std::vector<std::int64_t> twist;
  for (const auto& y : y_outer) twist.push_back(to_int64(Integer(y * Rational(static_cast<long>(q)))));
  const auto phases = phase_table(q);

  std::mutex cache_mutex;
  std::map<IntVector, Complex> cache;
  auto d_value = [&](const IntVector& m_outer) {
    IntVector key;
    for (auto i : ctx.I) {
      std::int64_t outer = 0;
      for (std::size_t p = 0; p < outer_dims; ++p) outer += spec.a(i, ctx.Jbar[p]) * m_outer[p];
      key.push_back(outer);
    }
    {
      std::lock_guard lock(cache_mutex);
      if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    Complex d = coefficient_D(spec, ctx, gf, m_outer, options.singular);
    std::lock_guard lock(cache_mutex);
    cache.emplace(std::move(key), d);
    return d;
  };

  auto summand = [&](const IntVector& m) {
    double magnitude = 1.0;
    std::int64_t t = 0;
    for (std::size_t p = 0; p < outer_dims; ++p) {
      magnitude *= inverse_power(static_cast<double>(m[p]), spec.h()[ctx.Jbar[p]]);
      t += twist[p] * (m[p] % q);
    }
    for (auto i : ctx.Ibar) {
      std::int64_t form = 0;
      for (std::size_t p = 0; p < outer_dims; ++p) form += spec.a(i, ctx.Jbar[p]) * m[p];
      magnitude *= inverse_power(static_cast<double>(form), spec.k()[i]);
    }
    // e(-m y) is the conjugate table entry.
    const Complex phase = std::conj(phases[static_cast<std::size_t>(t % q)]);
    return phase * magnitude * d_value(m) * prefactor;
  };

  out.M = M_outer;
  out.terms_summed = 1;
  for (std::size_t p = 0; p < outer_dims; ++p) out.terms_summed *= static_cast<std::uint64_t>(M_outer);
  auto shells = shell_sums(outer_dims, M_outer, resolve_threads(options.threads), summand);

  // D carries phases e(-dot * c); the summand is periodic in m_Jbar with the
  // combined period.
  const std::int64_t period = std::lcm(q, to_int64(gf.phase_period()));

  // Empirical decay: compare the outermost shells with those near M/2 in
  // the same residue class.
  int exponent = 1;
  const double outer = outer_shell(shells, period);
  const std::int64_t half = M_outer - period * ((M_outer / 2 + period - 1) / period);
  if (outer > 0.0 && half >= 1) {
    std::vector<Complex> head(shells.begin(), shells.begin() + half + 1);
    const double inner = outer_shell(head, period);
    if (inner > 0.0) {
      const double slope = std::log(inner / outer) / std::log(static_cast<double>(M_outer) / static_cast<double>(half));
      exponent = std::max(1, static_cast<int>(std::floor(slope - 1.0 + 0.3)));
    }
  }
  finish_partial_sum(out, shells, period, exponent, static_cast<int>(outer_dims) - 1);
  return out;
}

RhsResult rhs_total(const SeriesSpec& spec, std::int64_t M_outer, const EvalOptions& options) {
  RhsResult out;
  CompensatedSum raw, extrapolated;
  for (const auto& J : nonempty_subsets(spec.r())) {
    SubsetContext ctx = subset_context(spec, J);
    PartialSum sum = term_T(spec, ctx, M_outer, options);
    raw.add(sum.value);
    extrapolated.add(sum.extrapolated);
    out.per_J.push_back({std::move(ctx), sum});
  }
  out.value = raw.value();
  out.extrapolated = extrapolated.value();
  return out;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "fail";
}

VerificationReport verify_parity(const SeriesSpec& spec, std::int64_t M, std::int64_t M_outer, double tol,
                                 const ConvergenceVerdict& convergence, const EvalOptions& options) {
  if (convergence.status == ConvergenceStatus::Unknown)
    throw Error(ErrorKind::ConvergenceUnknown, "convergence not established: " + convergence.detail);
  if (!(tol > 0.0)) throw Error(ErrorKind::DimensionMismatch, "tolerance must be positive");

  VerificationReport report;
  report.spec = spec;
  report.M = M;
  report.M_outer = M_outer;
  report.tol = tol;
  report.convergence = convergence;
  report.lhs_plus = zeta_direct(spec, M, options);
  report.lhs_minus = spec.twisted() ? zeta_direct(spec.negated_twist(), M, options) : report.lhs_plus;

  const std::int64_t weight = spec.weight();
  const auto r = static_cast<std::int64_t>(spec.r());
  report.sign = (weight + r + 1) % 2 == 0 ? 1 : -1;
  report.lhs_combination = report.lhs_plus.extrapolated + static_cast<double>(report.sign) * report.lhs_minus.extrapolated;

  report.rhs = rhs_total(spec, M_outer, options);
  report.residual = std::abs(report.lhs_combination - report.rhs.extrapolated);
  report.tail_slack = report.lhs_plus.tail_estimate + report.lhs_minus.tail_estimate;
  for (const auto& term : report.rhs.per_J) report.tail_slack += term.sum.tail_estimate;

  report.different_parity = (weight + r) % 2 != 0;
  double worst = report.residual;
  if (report.different_parity) {
    CorollaryCheck check;
    check.re_zeta = report.lhs_plus.extrapolated.real();
    check.half_rhs = 0.5 * report.rhs.extrapolated;
    check.residual = std::abs(Complex(check.re_zeta, 0.0) - check.half_rhs);
    worst = std::max(worst, check.residual);
    report.corollary = check;
  }
  if (worst <= tol) report.verdict = Verdict::Pass;
  else if (worst <= tol + report.tail_slack) report.verdict = Verdict::Inconclusive;
  else report.verdict = Verdict::Fail;
  return report;
}

}  // namespace dparity
