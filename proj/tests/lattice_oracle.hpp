#pragma once

#include <cstdlib>
#include <set>

#include "dparity/model.hpp"

// Brute-force lattice quotient counting for small integer matrices.
namespace testing::lattice {

using dparity::IntRows;
using dparity::IntVector;

// Cofactor adjugate for n <= 3, written out independently of the library.
inline IntRows adjugate(const IntRows& m) {
  const std::size_t n = m.size();
  if (n == 1) return {{1}};
  if (n == 2) return {{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}};
  IntRows adj(3, IntVector(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  return adj;
}

inline std::int64_t det_small(const IntRows& m) {
  if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const IntRows adj = adjugate(m);
  return m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
}

// Coset key of w in Z^n / (row lattice of m): w * adj(m) mod |det|.
inline IntVector coset_key(const IntRows& adj, const IntVector& w, std::int64_t det) {
  const std::int64_t d = std::abs(det);
  IntVector key(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * adj[i][j];
    key[j] = ((s % d) + d) % d;
  }
  return key;
}

// Number of classes among the box [0, |det|)^n.
inline std::size_t brute_force_order(const IntRows& m) {
  const std::int64_t det = det_small(m);
  const IntRows adj = adjugate(m);
  const std::size_t n = m.size();
  std::set<IntVector> keys;
  IntVector w(n, 0);
  while (true) {
    keys.insert(coset_key(adj, w, det));
    std::size_t p = 0;
    while (p < n && ++w[p] == std::abs(det)) w[p++] = 0;
    if (p == n) break;
  }
  return keys.size();
}

}  // namespace testing::lattice
