#include "dparity/exact_linalg.hpp"

#include <algorithm>
#include <utility>

#include "dparity/error.hpp"

namespace dparity {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const IntRows& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(static_cast<long>(rows[i][j]));
  return m;
}

std::vector<Rational> RationalMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const IntRows& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

namespace {

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(static_cast<long>(m(i, j)));
  return q;
}

// Row echelon form in place; returns the rank and the sign/scale product for
// the determinant.
std::size_t eliminate(RationalMatrix& m, Rational* det) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  Rational d = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) {
      d = 0;
      continue;
    }
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot, j), m(rank, j));
      d = -d;
    }
    d *= m(rank, c);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      Rational factor = m(i, c) / m(rank, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= factor * m(rank, j);
    }
    ++rank;
  }
  if (det) *det = rank == rows ? d : Rational(0);
  return rank;
}

}  // namespace

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  RationalMatrix work = m;
  Rational det;
  eliminate(work, &det);
  return det;
}

std::int64_t determinant(const IntMatrix& m) {
  Rational det = determinant(to_rational(m));
  return to_int64(det.get_num());
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix work = m;
  return eliminate(work, nullptr);
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
    if (pivot != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(c, j));
        std::swap(inv(pivot, j), inv(c, j));
      }
    Rational scale = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational factor = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= factor * a(c, j);
        inv(i, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

RationalMatrix dual_basis(const Basis& basis) {
  const std::size_t n = basis.vectors.rows();
  if (n != basis.vectors.cols()) throw Error(ErrorKind::SingularBasis, "basis matrix is not square");
  RationalMatrix inv;
  try {
    inv = inverse(to_rational(basis.vectors));
  } catch (const Error&) {
    throw Error(ErrorKind::SingularBasis, "basis vectors are linearly dependent");
  }
  // B * B^{-1} = I, so the columns of B^{-1} are the duals.
  RationalMatrix dual(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dual(i, j) = inv(j, i);
  return dual;
}

namespace {

using ZMat = std::vector<std::vector<Integer>>;

ZMat to_z(const IntMatrix& m) {
  ZMat z(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) z[i][j] = static_cast<long>(m(i, j));
  return z;
}

IntMatrix from_z(const ZMat& z) {
  IntMatrix m(z.size(), z.empty() ? 0 : z.front().size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = to_int64(z[i][j]);
  return m;
}

ZMat z_identity(std::size_t n) {
  ZMat z(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) z[i][i] = 1;
  return z;
}

void swap_rows(ZMat& a, std::size_t i, std::size_t j) { std::swap(a[i], a[j]); }

void swap_cols(ZMat& a, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
}

// row_dst -= q * row_src
void sub_row(ZMat& a, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t j = 0; j < a[dst].size(); ++j) a[dst][j] -= q * a[src][j];
}

void sub_col(ZMat& a, std::size_t dst, std::size_t src, const Integer& q) {
  for (auto& row : a) row[dst] -= q * row[src];
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::DimensionMismatch, "Smith form of a non-square matrix");
  if (determinant(m) == 0) throw Error(ErrorKind::SingularMatrix, "Smith form of a singular matrix");

  ZMat a = to_z(m);
  ZMat u = z_identity(n);
  ZMat v = z_identity(n);

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pi = t, pj = t;
      bool found = false;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (!found || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j, found = true;
      swap_rows(a, t, pi);
      swap_rows(u, t, pi);
      swap_cols(a, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        sub_row(a, i, t, q);
        sub_row(u, i, t, q);
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        sub_col(a, j, t, q);
        sub_col(v, j, t, q);
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and retry.
      std::size_t offending = n;
      for (std::size_t i = t + 1; i < n && offending == n; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            offending = i;
            break;
          }
      if (offending == n) break;
      sub_row(a, t, offending, -1);
      sub_row(u, t, offending, -1);
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }
  return {from_z(u), from_z(a), from_z(v)};
}

CosetSet coset_representatives(const IntMatrix& basis) {
  SmithForm snf = smith_normal_form(basis);
  const std::size_t n = basis.rows();
  // rows(basis) span Z^n D V^{-1}; representatives are u V^{-1} with
  // 0 <= u_i < d_i.
  RationalMatrix v_inv = inverse(to_rational(snf.V));
  std::vector<std::int64_t> d(n);
  std::int64_t order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = snf.D(i, i);
    order *= d[i];
  }

  CosetSet out;
  out.group_order = order;
  out.representatives.reserve(static_cast<std::size_t>(order));
  std::vector<std::int64_t> u(n, 0);
  for (std::int64_t count = 0; count < order; ++count) {
    IntVector w(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      Rational acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += Rational(static_cast<long>(u[i])) * v_inv(i, j);
      w[j] = to_int64(acc.get_num());
    }
    out.representatives.push_back(std::move(w));
    // lexicographic odometer, last coordinate fastest
    for (std::size_t i = n; i-- > 0;) {
      if (++u[i] < d[i]) break;
      u[i] = 0;
    }
  }
  return out;
}

bool same_coset(const IntMatrix& basis, const IntVector& w, const IntVector& w2) {
  const std::size_t n = basis.rows();
  if (w.size() != n || w2.size() != n) throw Error(ErrorKind::DimensionMismatch, "coset vector length");
  RationalMatrix inv = inverse(to_rational(basis));
  for (std::size_t j = 0; j < n; ++j) {
    Rational coord = 0;
    for (std::size_t i = 0; i < n; ++i) coord += Rational(static_cast<long>(w[i] - w2[i])) * inv(i, j);
    if (coord.get_den() != 1) return false;
  }
  return true;
}

std::vector<IndexSet> independent_subsets(const IntRows& family, std::size_t size) {
  std::vector<IndexSet> out;
  const std::size_t n = family.size();
  if (size > n) return out;
  if (size == 0) return {IndexSet{}};
  IndexSet pick(size);
  for (std::size_t i = 0; i < size; ++i) pick[i] = i;
  for (;;) {
    IntRows rows;
    for (auto p : pick) rows.push_back(family[p]);
    if (rank(RationalMatrix::from_rows(rows)) == size) out.push_back(pick);
    std::size_t i = size;
    while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::vector<Rational> rho_candidate(std::size_t dim, std::size_t step, RhoLadder ladder) {
  std::vector<Rational> rho(dim);
  if (step == 0) {
    for (std::size_t i = 0; i < dim; ++i) rho[i] = static_cast<long>(i + 1);
  } else {
    Integer t = static_cast<unsigned long>(dim + step);
    Integer power = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      rho[i] = Rational(power);
      power *= t;
    }
  }
  if (ladder == RhoLadder::Reversed) std::reverse(rho.begin(), rho.end());
  if (ladder == RhoLadder::Negated)
    for (auto& x : rho) x = -x;
  return rho;
}

std::optional<RhoVector> certify_rho(const IntRows& family, const std::vector<Rational>& candidate) {
  const std::size_t dim = candidate.size();
  RhoVector rho{candidate, {}};
  auto bases = independent_subsets(family, dim);
  for (std::size_t b = 0; b < bases.size(); ++b) {
    IntRows rows;
    for (auto p : bases[b]) rows.push_back(family[p]);
    RationalMatrix dual = dual_basis(Basis{bases[b], IntMatrix::from_rows(rows)});
    for (std::size_t k = 0; k < dim; ++k) {
      Rational pairing = dot(candidate, dual.row(k));
      if (pairing == 0) return std::nullopt;
      rho.certificate.push_back({b, k, pairing});
    }
  }
  for (const auto& hyper : independent_subsets(family, dim - 1)) {
    RationalMatrix m(dim, dim);
    for (std::size_t i = 0; i < hyper.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = Rational(static_cast<long>(family[hyper[i]][j]));
    for (std::size_t j = 0; j < dim; ++j) m(dim - 1, j) = candidate[j];
    if (determinant(m) == 0) return std::nullopt;
  }
  return rho;
}

RhoVector choose_rho(const IntRows& family, RhoLadder ladder, std::size_t max_steps) {
  if (family.empty()) throw Error(ErrorKind::RankDeficientLambda, "empty family");
  const std::size_t dim = family.front().size();
  if (rank(RationalMatrix::from_rows(family)) != dim)
    throw Error(ErrorKind::RankDeficientLambda, "family does not span Q^" + std::to_string(dim));
  for (std::size_t step = 0; step < max_steps; ++step)
    if (auto rho = certify_rho(family, rho_candidate(dim, step, ladder))) return *rho;
  throw Error(ErrorKind::ExhaustedCandidates, "no certified rho in " + std::to_string(max_steps) + " candidates");
}

Rational fractional_part(const std::vector<Rational>& y, const std::vector<Rational>& dual,
                         const std::vector<Rational>& rho) {
  Rational orientation = dot(rho, dual);
  if (orientation == 0) throw Error(ErrorKind::ZeroPairing, "<rho, dual> vanishes");
  Rational pairing = dot(y, dual);
  if (orientation > 0) return frac(pairing);
  return 1 - frac(-pairing);
}

}  // namespace dparity
