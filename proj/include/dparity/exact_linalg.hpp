#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dparity/model.hpp"
#include "dparity/rational.hpp"

namespace dparity {

// Exact linear algebra over Q and Z. No floating point in this module.

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const IntRows& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::vector<Rational> row(std::size_t i) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const IntRows& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

Rational determinant(const RationalMatrix& m);
std::int64_t determinant(const IntMatrix& m);
std::size_t rank(const RationalMatrix& m);
/// Throws Error(SingularMatrix).
RationalMatrix inverse(const RationalMatrix& m);

/// A candidate basis drawn from a finite family of integer vectors.
struct Basis {
  /// Positions of the chosen vectors in the family they came from.
  IndexSet members;
  /// Row k is the vector of members[k].
  IntMatrix vectors;
};

/// Rows are the dual vectors: <vectors.row(i), dual.row(j)> = delta_ij.
/// Throws Error(SingularBasis).
RationalMatrix dual_basis(const Basis& basis);

struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

/// U * M * V = D, D diagonal with positive entries d_1 | d_2 | ... | d_m,
/// U and V unimodular. Throws Error(SingularMatrix).
SmithForm smith_normal_form(const IntMatrix& m);

struct CosetSet {
  std::vector<IntVector> representatives;
  std::int64_t group_order = 0;
};

/// Representatives of Z^m / L where L is the lattice spanned by the rows of
/// `basis`. Ordered lexicographically in Smith coordinates.
CosetSet coset_representatives(const IntMatrix& basis);

/// w ~ w' (mod the row lattice of `basis`), decided by an exact solve.
bool same_coset(const IntMatrix& basis, const IntVector& w, const IntVector& w2);

/// All size-`size` subsets of `family` (lexicographic in positions) whose
/// vectors are linearly independent.
std::vector<IndexSet> independent_subsets(const IntRows& family, std::size_t size);

enum class RhoLadder {
  /// (1, 2, ..., m), then (1, t, ..., t^{m-1}) for t = m+1, m+2, ...
  Standard,
  /// Each standard candidate with its coordinates reversed.
  Reversed,
  /// Each standard candidate negated.
  Negated,
};

struct RhoPairing {
  std::size_t basis = 0;
  std::size_t member = 0;
  Rational value;
};

struct RhoVector {
  std::vector<Rational> coords;
  /// <rho, dual_basis(B).row(member)> for every basis B and member; all nonzero.
  std::vector<RhoPairing> certificate;
};

std::vector<Rational> rho_candidate(std::size_t dim, std::size_t step, RhoLadder ladder = RhoLadder::Standard);

/// Verifies `candidate` exactly against every basis of `family` and against
/// every hyperplane spanned by dim-1 independent members.
std::optional<RhoVector> certify_rho(const IntRows& family, const std::vector<Rational>& candidate);

/// First certified candidate of the ladder. Throws Error(ExhaustedCandidates)
/// after `max_steps` candidates, and Error(RankDeficientLambda) when the
/// family does not span.
RhoVector choose_rho(const IntRows& family, RhoLadder ladder = RhoLadder::Standard, std::size_t max_steps = 256);

/// The rho-oriented fractional part of <y, dual>:
///   {<y, dual>}          if <rho, dual> > 0,
///   1 - {-<y, dual>}     if <rho, dual> < 0.
/// Throws Error(ZeroPairing) if <rho, dual> = 0.
Rational fractional_part(const std::vector<Rational>& y, const std::vector<Rational>& dual,
                         const std::vector<Rational>& rho);

}  // namespace dparity
