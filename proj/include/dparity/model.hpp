#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dparity/rational.hpp"

namespace dparity {

using IntVector = std::vector<std::int64_t>;
using IntRows = std::vector<IntVector>;

/// Zero-based index set, kept sorted.
using IndexSet = std::vector<std::size_t>;

/// The problem statement (r, ell, h, k, y, A) of the multiple Dirichlet series
///
///   sum_{m in N^r} prod_j e(m_j y_j) / m_j^{h_j} * prod_i (sum_j a_ij m_j)^{-k_i}.
///
/// Only constructible through validate_spec, so every instance satisfies the
/// matrix conditions.
class SeriesSpec {
 public:
  std::size_t r() const { return h_.size(); }
  std::size_t ell() const { return k_.size(); }
  const IntVector& h() const { return h_; }
  const IntVector& k() const { return k_; }
  /// Twist, reduced into [0, 1).
  const std::vector<Rational>& y() const { return y_; }
  const IntRows& A() const { return a_; }
  std::int64_t a(std::size_t i, std::size_t j) const { return a_[i][j]; }

  /// wt(h) + wt(k).
  std::int64_t weight() const;
  /// Largest row sum of A.
  std::int64_t max_row_sum() const;
  bool twisted() const;

  /// Same series with y replaced by -y (again reduced mod 1).
  SeriesSpec negated_twist() const;

 private:
  friend SeriesSpec validate_spec(const IntRows&, const IntVector&, const IntVector&,
                                  const std::vector<Rational>&);
  IntRows a_;
  IntVector h_;
  IntVector k_;
  std::vector<Rational> y_;
};

/// Checks the two matrix conditions (no zero row, no zero column), positivity
/// of the exponents and the dimensions. Error messages name the offending
/// index one-based.
SeriesSpec validate_spec(const IntRows& A, const IntVector& h, const IntVector& k,
                         const std::vector<Rational>& y);

struct SubsetContext {
  IndexSet J;
  IndexSet Jbar;
  /// Rows of A with a nonzero entry in some column of J.
  IndexSet I;
  IndexSet Ibar;
};

SubsetContext subset_context(const SeriesSpec& spec, const IndexSet& J);

/// All non-empty subsets of {0..r-1}, ordered by their bitmask.
std::vector<IndexSet> nonempty_subsets(std::size_t r);

/// Sum of the entries of values selected by idx; zero for the empty selection.
std::int64_t weight_of(const IntVector& values, const IndexSet& idx);

/// One-based "{1,2}" rendering used in reports and diagnostics.
std::string format_set(const IndexSet& set);

enum class ConvergenceStatus { ProvedSufficient, Unknown, UserAsserted };

std::string to_string(ConvergenceStatus status);

struct ConvergenceVerdict {
  ConvergenceStatus status = ConvergenceStatus::Unknown;
  std::string detail;
};

/// Conservative test of the absolute-convergence hypothesis the parity
/// identity needs for every subset J. Accepts
///  - the Mordell-Tornheim shape (one all-ones row), any exponents;
///  - any A where every column j has effective exponent
///      h_j + sum{ k_i : row i is supported on column j alone } >= 2,
///    since |form| >= 1 for each nonzero integer form and a single-column row
///    contributes |a_ij m_j| >= m_j regardless of J.
/// Everything else is Unknown; `assert_convergence` upgrades Unknown to
/// UserAsserted.
ConvergenceVerdict convergence_check(const SeriesSpec& spec, bool assert_convergence = false);

}  // namespace dparity
