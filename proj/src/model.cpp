#include "dparity/model.hpp"

#include <algorithm>
#include <sstream>

#include "dparity/error.hpp"

namespace dparity {

std::int64_t SeriesSpec::weight() const {
  std::int64_t w = 0;
  for (auto v : h_) w += v;
  for (auto v : k_) w += v;
  return w;
}

std::int64_t SeriesSpec::max_row_sum() const {
  std::int64_t best = 0;
  for (const auto& row : a_) {
    std::int64_t s = 0;
    for (auto v : row) s += v;
    best = std::max(best, s);
  }
  return best;
}

bool SeriesSpec::twisted() const {
  return std::any_of(y_.begin(), y_.end(), [](const Rational& v) { return v != 0; });
}

SeriesSpec SeriesSpec::negated_twist() const {
  std::vector<Rational> minus;
  minus.reserve(y_.size());
  for (const auto& v : y_) minus.push_back(-v);
  return validate_spec(a_, h_, k_, minus);
}

SeriesSpec validate_spec(const IntRows& A, const IntVector& h, const IntVector& k,
                         const std::vector<Rational>& y) {
  const std::size_t ell = A.size();
  if (ell == 0) throw Error(ErrorKind::DimensionMismatch, "A has no rows");
  const std::size_t r = A.front().size();
  if (r == 0) throw Error(ErrorKind::DimensionMismatch, "A has no columns");
  for (std::size_t i = 0; i < ell; ++i)
    if (A[i].size() != r)
      throw Error(ErrorKind::DimensionMismatch,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(A[i].size()) +
                      " entries, expected " + std::to_string(r));
  if (h.size() != r)
    throw Error(ErrorKind::DimensionMismatch,
                "|h| = " + std::to_string(h.size()) + " but A has " + std::to_string(r) + " columns");
  if (k.size() != ell)
    throw Error(ErrorKind::DimensionMismatch,
                "|k| = " + std::to_string(k.size()) + " but A has " + std::to_string(ell) + " rows");
  if (y.size() != r)
    throw Error(ErrorKind::DimensionMismatch,
                "|y| = " + std::to_string(y.size()) + " but A has " + std::to_string(r) + " columns");

  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (A[i][j] < 0)
        throw Error(ErrorKind::DimensionMismatch, "entry (" + std::to_string(i + 1) + "," +
                                                      std::to_string(j + 1) + ") of A is negative");
  for (std::size_t i = 0; i < ell; ++i)
    if (std::all_of(A[i].begin(), A[i].end(), [](auto v) { return v == 0; }))
      throw Error(ErrorKind::ZeroRow, "row " + std::to_string(i + 1) + " of A is zero");
  for (std::size_t j = 0; j < r; ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < ell; ++i) nonzero = nonzero || A[i][j] != 0;
    if (!nonzero) throw Error(ErrorKind::ZeroColumn, "column " + std::to_string(j + 1) + " of A is zero");
  }
  for (std::size_t j = 0; j < r; ++j)
    if (h[j] < 1)
      throw Error(ErrorKind::NonPositiveExponent, "h_" + std::to_string(j + 1) + " = " + std::to_string(h[j]));
  for (std::size_t i = 0; i < ell; ++i)
    if (k[i] < 1)
      throw Error(ErrorKind::NonPositiveExponent, "k_" + std::to_string(i + 1) + " = " + std::to_string(k[i]));

  SeriesSpec spec;
  spec.a_ = A;
  spec.h_ = h;
  spec.k_ = k;
  spec.y_.reserve(r);
  for (const auto& v : y) spec.y_.push_back(frac(v));
  return spec;
}

SubsetContext subset_context(const SeriesSpec& spec, const IndexSet& J) {
  if (J.empty()) throw Error(ErrorKind::EmptySubset, "J must be non-empty");
  const std::size_t r = spec.r();
  std::vector<bool> in_j(r, false);
  for (auto j : J) {
    if (j >= r) throw Error(ErrorKind::DimensionMismatch, "index " + std::to_string(j + 1) + " not in [r]");
    in_j[j] = true;
  }
  SubsetContext ctx;
  for (std::size_t j = 0; j < r; ++j) (in_j[j] ? ctx.J : ctx.Jbar).push_back(j);
  for (std::size_t i = 0; i < spec.ell(); ++i) {
    bool touches = false;
    for (auto j : ctx.J) touches = touches || spec.a(i, j) != 0;
    (touches ? ctx.I : ctx.Ibar).push_back(i);
  }
  return ctx;
}

std::vector<IndexSet> nonempty_subsets(std::size_t r) {
  std::vector<IndexSet> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    IndexSet s;
    for (std::size_t j = 0; j < r; ++j)
      if (mask & (std::size_t{1} << j)) s.push_back(j);
    out.push_back(std::move(s));
  }
  return out;
}

std::int64_t weight_of(const IntVector& values, const IndexSet& idx) {
  std::int64_t w = 0;
  for (auto i : idx) w += values[i];
  return w;
}

std::string format_set(const IndexSet& set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t n = 0; n < set.size(); ++n) os << (n ? "," : "") << set[n] + 1;
  os << '}';
  return os.str();
}

std::string to_string(ConvergenceStatus status) {
  switch (status) {
    case ConvergenceStatus::ProvedSufficient: return "proved-sufficient";
    case ConvergenceStatus::Unknown: return "unknown";
    case ConvergenceStatus::UserAsserted: return "user-asserted";
  }
  return "unknown";
}

ConvergenceVerdict convergence_check(const SeriesSpec& spec, bool assert_convergence) {
  const auto& A = spec.A();
  if (spec.ell() == 1 &&
      std::all_of(A[0].begin(), A[0].end(), [](auto v) { return v == 1; })) {
    return {ConvergenceStatus::ProvedSufficient,
            "Mordell-Tornheim shape (single all-ones row): absolutely convergent for all positive exponents"};
  }

  std::vector<std::int64_t> effective(spec.h().begin(), spec.h().end());
  for (std::size_t i = 0; i < spec.ell(); ++i) {
    std::size_t support = 0, column = 0;
    for (std::size_t j = 0; j < spec.r(); ++j)
      if (A[i][j] != 0) ++support, column = j;
    if (support == 1) effective[column] += spec.k()[i];
  }
  std::ostringstream bad;
  for (std::size_t j = 0; j < spec.r(); ++j)
    if (effective[j] < 2) bad << (bad.tellp() > 0 ? ", " : "") << "column " << j + 1;
  if (bad.tellp() == 0) {
    return {ConvergenceStatus::ProvedSufficient,
            "every column has effective exponent >= 2 (bounded by a product of convergent zeta sums)"};
  }
  if (assert_convergence) {
    return {ConvergenceStatus::UserAsserted,
            "convergence asserted by the caller; sufficient condition fails at " + bad.str()};
  }
  return {ConvergenceStatus::Unknown, "sufficient condition fails at " + bad.str()};
}

}  // namespace dparity
