#include "dparity/mpseries.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <numbers>

#include "dparity/error.hpp"

namespace dparity {

std::string VarTag::label() const {
  return kind == Kind::Unit ? "t" + std::to_string(index + 1) : "t_r+" + std::to_string(index + 1);
}

SeriesShape::SeriesShape(std::vector<VarTag> vars, std::vector<int> caps, int total_cap)
    : vars_(std::move(vars)), caps_(std::move(caps)), total_cap_(total_cap) {
  if (vars_.size() != caps_.size()) throw Error(ErrorKind::CapMismatch, "one cap per variable required");
  for (int c : caps_)
    if (c < 0) throw Error(ErrorKind::CapMismatch, "negative cap");
  if (total_cap_ < 0) throw Error(ErrorKind::CapMismatch, "negative total cap");
  const std::size_t n = vars_.size();
  strides_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    strides_[v] = size_;
    size_ *= static_cast<std::size_t>(caps_[v] + 1);
  }
  exps_.assign(size_ * n, 0);
  degree_.assign(size_, 0);
  for (std::size_t s = 0; s < size_; ++s) {
    std::size_t rest = s;
    int deg = 0;
    for (std::size_t v = 0; v < n; ++v) {
      int e = static_cast<int>(rest % static_cast<std::size_t>(caps_[v] + 1));
      rest /= static_cast<std::size_t>(caps_[v] + 1);
      exps_[s * n + v] = e;
      deg += e;
    }
    degree_[s] = deg;
    if (deg <= total_cap_) live_.push_back(s);
  }
  std::stable_sort(live_.begin(), live_.end(), [&](std::size_t a, std::size_t b) { return degree_[a] < degree_[b]; });
}

namespace {
int sum_of(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}
}  // namespace

SeriesShape::SeriesShape(std::vector<VarTag> vars, std::vector<int> caps)
    : SeriesShape(std::move(vars), caps, sum_of(caps)) {}

bool SeriesShape::contains(const std::vector<int>& exps) const {
  if (exps.size() != vars_.size()) return false;
  int deg = 0;
  for (std::size_t v = 0; v < exps.size(); ++v) {
    if (exps[v] < 0 || exps[v] > caps_[v]) return false;
    deg += exps[v];
  }
  return deg <= total_cap_;
}

std::size_t SeriesShape::slot(const std::vector<int>& exps) const {
  if (!contains(exps)) throw Error(ErrorKind::CapExceeded, "exponent outside the truncation");
  std::size_t s = 0;
  for (std::size_t v = 0; v < exps.size(); ++v) s += static_cast<std::size_t>(exps[v]) * strides_[v];
  return s;
}

ShapePtr make_shape(std::vector<VarTag> vars, std::vector<int> caps) {
  return std::make_shared<const SeriesShape>(std::move(vars), std::move(caps));
}

ShapePtr make_shape(std::vector<VarTag> vars, std::vector<int> caps, int total_cap) {
  return std::make_shared<const SeriesShape>(std::move(vars), std::move(caps), total_cap);
}

MultiSeries::MultiSeries(ShapePtr shape) : shape_(std::move(shape)), coeffs_(shape_->storage_size()) {}

MultiSeries MultiSeries::constant(ShapePtr shape, Complex value) {
  MultiSeries s(std::move(shape));
  s.coeffs_[0] = value;
  return s;
}

MultiSeries MultiSeries::variable(ShapePtr shape, std::size_t var) {
  MultiSeries s(std::move(shape));
  const auto& layout = s.layout();
  if (var >= layout.num_vars()) throw Error(ErrorKind::CapMismatch, "variable index out of range");
  if (layout.caps()[var] >= 1 && layout.total_cap() >= 1) s.coeffs_[layout.stride(var)] = 1.0;
  return s;
}

MultiSeries MultiSeries::linear(ShapePtr shape, const std::vector<Complex>& coeffs) {
  MultiSeries s(std::move(shape));
  const auto& layout = s.layout();
  if (coeffs.size() != layout.num_vars()) throw Error(ErrorKind::CapMismatch, "one coefficient per variable");
  if (layout.total_cap() < 1) return s;
  for (std::size_t v = 0; v < coeffs.size(); ++v)
    if (layout.caps()[v] >= 1) s.coeffs_[layout.stride(v)] = coeffs[v];
  return s;
}

Complex MultiSeries::coefficient(const std::vector<int>& exps) const { return coeffs_[shape_->slot(exps)]; }

void MultiSeries::set(const std::vector<int>& exps, Complex value) { coeffs_[shape_->slot(exps)] = value; }

double MultiSeries::max_abs() const {
  double m = 0.0;
  for (auto s : shape_->live()) m = std::max(m, std::abs(coeffs_[s]));
  return m;
}

void MultiSeries::require_same_shape(const MultiSeries& other) const {
  if (shape_ != other.shape_ && !(*shape_ == *other.shape_))
    throw Error(ErrorKind::CapMismatch, "series have different variables or caps");
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& other) {
  require_same_shape(other);
  for (auto s : shape_->live()) coeffs_[s] += other.coeffs_[s];
  return *this;
}

MultiSeries& MultiSeries::operator-=(const MultiSeries& other) {
  require_same_shape(other);
  for (auto s : shape_->live()) coeffs_[s] -= other.coeffs_[s];
  return *this;
}

MultiSeries& MultiSeries::operator*=(Complex scalar) {
  for (auto s : shape_->live()) coeffs_[s] *= scalar;
  return *this;
}

MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
  a.require_same_shape(b);
  const SeriesShape& layout = a.layout();
  const std::size_t n = layout.num_vars();
  const int total = layout.total_cap();
  std::vector<std::size_t> b_support;
  for (auto s : layout.live())
    if (b.coeffs_[s] != Complex{}) b_support.push_back(s);

  MultiSeries out(a.shape_);
  for (auto i : layout.live()) {
    const Complex ai = a.coeffs_[i];
    if (ai == Complex{}) continue;
    const int room = total - layout.degree(i);
    for (auto j : b_support) {
      if (layout.degree(j) > room) break;
      bool fits = true;
      for (std::size_t v = 0; v < n && fits; ++v)
        fits = layout.exponent(i, v) + layout.exponent(j, v) <= layout.caps()[v];
      if (fits) out.coeffs_[i + j] += ai * b.coeffs_[j];
    }
  }
  return out;
}

MultiSeries invert_unit(const MultiSeries& s, double threshold) {
  const SeriesShape& layout = s.layout();
  const Complex c0 = s.constant_term();
  if (std::abs(c0) == 0.0 || std::abs(c0) <= threshold * s.max_abs())
    throw Error(ErrorKind::NonUnitSeries, "constant term is not invertible");
  const std::size_t n = layout.num_vars();
  std::vector<std::size_t> support;
  for (auto slot : layout.live())
    if (slot != 0 && s.at_slot(slot) != Complex{}) support.push_back(slot);

  MultiSeries inv(s.shape());
  inv.at_slot(0) = 1.0 / c0;
  for (auto alpha : layout.live()) {
    if (alpha == 0) continue;
    Complex acc{};
    for (auto beta : support) {
      if (layout.degree(beta) > layout.degree(alpha)) break;
      bool below = true;
      for (std::size_t v = 0; v < n && below; ++v) below = layout.exponent(beta, v) <= layout.exponent(alpha, v);
      if (below) acc += s.at_slot(beta) * inv.at_slot(alpha - beta);
    }
    inv.at_slot(alpha) = -acc / c0;
  }
  return inv;
}

MultiSeries restrict_to(const MultiSeries& s, ShapePtr target) {
  if (target->vars() != s.layout().vars()) throw Error(ErrorKind::CapMismatch, "restriction changes variables");
  MultiSeries out(std::move(target));
  const auto& from = s.layout();
  const auto& to = out.layout();
  std::vector<int> exps(to.num_vars());
  for (auto slot : to.live()) {
    for (std::size_t v = 0; v < exps.size(); ++v) exps[v] = to.exponent(slot, v);
    if (from.contains(exps)) out.at_slot(slot) = s.at_slot(from.slot(exps));
  }
  return out;
}

LinearDivision divide_by_linear_form(const MultiSeries& s, const std::vector<Rational>& form, std::size_t pivot) {
  const SeriesShape& layout = s.layout();
  const std::size_t n = layout.num_vars();
  if (form.size() != n) throw Error(ErrorKind::CapMismatch, "one form coefficient per variable");
  const int total = layout.total_cap();
  if (total < 1) throw Error(ErrorKind::CapMismatch, "nothing left after division");
  if (pivot == first_nonzero) {
    for (std::size_t v = 0; v < n && pivot == first_nonzero; ++v)
      if (form[v] != 0) pivot = v;
    if (pivot == first_nonzero) throw Error(ErrorKind::SingularConfiguration, "division by the zero form");
  }
  if (pivot >= n || form[pivot] == 0) throw Error(ErrorKind::SingularConfiguration, "pivot coefficient is zero");
  if (layout.caps()[pivot] < total)
    throw Error(ErrorKind::CapMismatch, "the pivot variable must be capped by the total degree only");

  std::vector<double> c(n);
  for (std::size_t v = 0; v < n; ++v) c[v] = to_double(form[v]);

  std::vector<int> caps(layout.caps());
  for (auto& cap : caps) cap = std::min(cap, total - 1);
  auto qshape = make_shape(layout.vars(), caps, total - 1);
  MultiSeries q(qshape);
  const SeriesShape& ql = *qshape;

  // Group quotient slots by degree, and inside each degree by decreasing
  // pivot exponent, so every right-hand side is already known.
  std::vector<std::size_t> order = ql.live();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ql.degree(a) != ql.degree(b)) return ql.degree(a) < ql.degree(b);
    return ql.exponent(a, pivot) > ql.exponent(b, pivot);
  });
  std::vector<int> exps(n);
  for (auto alpha : order) {
    for (std::size_t v = 0; v < n; ++v) exps[v] = ql.exponent(alpha, v);
    exps[pivot] += 1;
    Complex acc = s.at_slot(layout.slot(exps));
    exps[pivot] -= 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == pivot || c[v] == 0.0 || exps[v] == 0) continue;
      exps[v] -= 1;
      exps[pivot] += 1;
      if (ql.contains(exps)) acc -= c[v] * q.at_slot(ql.slot(exps));
      exps[pivot] -= 1;
      exps[v] += 1;
    }
    q.at_slot(alpha) = acc / c[pivot];
  }

  // Remainder: monomials of s free of the pivot must be reproduced by L * q.
  double remainder = 0.0;
  for (auto beta : layout.live()) {
    if (layout.exponent(beta, pivot) != 0) continue;
    for (std::size_t v = 0; v < n; ++v) exps[v] = layout.exponent(beta, v);
    Complex acc = s.at_slot(beta);
    for (std::size_t v = 0; v < n; ++v) {
      if (c[v] == 0.0 || exps[v] == 0) continue;
      exps[v] -= 1;
      if (ql.contains(exps)) acc -= c[v] * q.at_slot(ql.slot(exps));
      exps[v] += 1;
    }
    remainder = std::max(remainder, std::abs(acc));
  }
  return {std::move(q), remainder};
}

MultiSeries unit_exp(ShapePtr shape, const std::vector<Rational>& coeffs) {
  const Complex two_pi_i{0.0, 2.0 * std::numbers::pi};
  std::vector<Complex> lin(coeffs.size());
  for (std::size_t v = 0; v < coeffs.size(); ++v) lin[v] = two_pi_i * to_double(coeffs[v]);
  MultiSeries x = MultiSeries::linear(shape, lin);
  MultiSeries result = MultiSeries::constant(shape, 1.0);
  MultiSeries power = result;
  const int top = shape->total_cap();
  for (int n = 1; n <= top; ++n) {
    power = power * x;
    power *= 1.0 / n;
    result += power;
  }
  return result;
}

BernoulliTable::BernoulliTable(int max_degree) {
  const auto size = static_cast<std::size_t>(std::max(max_degree, 1) + 1);
  // binomial rows C(n, k) for n <= size
  std::vector<std::vector<Integer>> binom(size + 1);
  for (std::size_t n = 0; n <= size; ++n) {
    binom[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
  }
  numbers_.resize(size);
  numbers_[0] = 1;
  for (std::size_t n = 1; n < size; ++n) {
    Rational acc = 0;
    for (std::size_t k = 0; k < n; ++k) acc += Rational(binom[n + 1][k]) * numbers_[k];
    numbers_[n] = -acc / Rational(static_cast<long>(n + 1));
  }
  polys_.resize(size);
  for (std::size_t n = 0; n < size; ++n) {
    polys_[n].resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) polys_[n][j] = Rational(binom[n][j]) * numbers_[n - j];
  }
}

Rational BernoulliTable::evaluate(int n, const Rational& x) const {
  const auto& p = polynomial(n);
  Rational acc = 0;
  for (std::size_t j = p.size(); j-- > 0;) acc = acc * x + p[j];
  return acc;
}

const BernoulliTable& BernoulliTable::shared(int max_degree) {
  static std::mutex mutex;
  static std::deque<BernoulliTable> tables;
  std::lock_guard lock(mutex);
  if (tables.empty() || tables.back().max_degree() < max_degree)
    tables.emplace_back(std::max(max_degree, tables.empty() ? 16 : 2 * tables.back().max_degree()));
  return tables.back();
}

MultiSeries bernoulli_factor(ShapePtr shape, std::size_t var, const Rational& c, Complex phase) {
  MultiSeries out(shape);
  const auto& layout = out.layout();
  if (var >= layout.num_vars()) throw Error(ErrorKind::CapMismatch, "variable index out of range");
  const int top = std::min(layout.caps()[var], layout.total_cap());
  const auto& table = BernoulliTable::shared(top);
  // (2 pi i)^n / n!
  Complex scale = 1.0;
  const Complex two_pi_i{0.0, 2.0 * std::numbers::pi};
  for (int n = 0; n <= top; ++n) {
    if (n > 0) scale *= two_pi_i / static_cast<double>(n);
    out.at_slot(static_cast<std::size_t>(n) * layout.stride(var)) = phase * scale * to_double(table.evaluate(n, c));
  }
  return out;
}

MultiSeries rational_factor(ShapePtr shape, std::size_t g, Complex d, const std::vector<Rational>& pairings) {
  if (d == Complex{}) throw Error(ErrorKind::SingularConfiguration, "rational factor with d = 0");
  const auto& layout = *shape;
  if (pairings.size() != layout.num_vars()) throw Error(ErrorKind::CapMismatch, "one pairing per variable");
  std::vector<Complex> lin(pairings.size());
  for (std::size_t v = 0; v < lin.size(); ++v) lin[v] = -to_double(pairings[v]) / d;
  lin[g] += 1.0 / d;
  MultiSeries x = MultiSeries::linear(shape, lin);
  // Horner for sum_{n <= top} x^n
  MultiSeries geometric = MultiSeries::constant(shape, 1.0);
  for (int n = 0; n < layout.total_cap(); ++n) {
    geometric = geometric * x;
    geometric.at_slot(0) += 1.0;
  }
  return geometric * MultiSeries::variable(shape, g) * (-1.0 / d);
}

}  // namespace dparity
