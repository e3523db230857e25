#include <doctest.h>

#include <random>
#include <set>

#include "dparity/error.hpp"
#include "dparity/exact_linalg.hpp"
#include "helpers.hpp"
#include "lattice_oracle.hpp"

using namespace dparity;
using testing::q;
using namespace testing::lattice;

namespace {

Basis basis_of(const IntRows& rows) {
  Basis b;
  for (std::size_t i = 0; i < rows.size(); ++i) b.members.push_back(i);
  b.vectors = IntMatrix::from_rows(rows);
  return b;
}

RationalMatrix gram(const Basis& b, const RationalMatrix& dual) {
  RationalMatrix out(dual.rows(), dual.rows());
  for (std::size_t i = 0; i < dual.rows(); ++i)
    for (std::size_t j = 0; j < dual.rows(); ++j) {
      Rational s = 0;
      for (std::size_t c = 0; c < dual.cols(); ++c) s += b.vectors(i, c) * dual(j, c);
      out(i, j) = s;
    }
  return out;
}

}  // namespace

TEST_SUITE("exact-linalg") {
  TEST_CASE("determinant, rank and inverse") {
    const auto m = RationalMatrix::from_rows({{2, 1}, {4, 3}});
    CHECK(determinant(m) == 2);
    CHECK(rank(m) == 2);
    CHECK(inverse(m) * m == RationalMatrix::identity(2));
    CHECK(rank(RationalMatrix::from_rows({{1, 2}, {2, 4}})) == 1);
    CHECK_THROWS_AS(inverse(RationalMatrix::from_rows({{1, 2}, {2, 4}})), Error);
    CHECK(determinant(IntMatrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 5}})) == -5);
  }

  TEST_CASE("dual_basis examples") {
    CHECK(dual_basis(basis_of({{1, 0}, {0, 1}})) == RationalMatrix::identity(2));
    CHECK(dual_basis(basis_of({{1, 0}, {1, 1}})) == RationalMatrix::from_rows({{1, -1}, {0, 1}}));
    CHECK_THROWS_AS(dual_basis(basis_of({{1, 1}, {2, 2}})), Error);

    // Mordell-Tornheim basis {f_2, f_3, f_{r+1}} (r = 3, i = 1): duals
    // f_j - f_1 for the unit members and f_1 for the row member.
    const auto dual = dual_basis(basis_of({{0, 1, 0}, {0, 0, 1}, {1, 1, 1}}));
    CHECK(dual == RationalMatrix::from_rows({{-1, 1, 0}, {-1, 0, 1}, {1, 0, 0}}));
  }

  TEST_CASE("Gram identity holds exactly for random bases") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-4, 4);
    int tested = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
      IntRows rows(n, IntVector(n));
      for (auto& row : rows)
        for (auto& v : row) v = entry(rng);
      if (determinant(IntMatrix::from_rows(rows)) == 0) continue;
      const Basis b = basis_of(rows);
      CHECK(gram(b, dual_basis(b)) == RationalMatrix::identity(n));
      ++tested;
    }
    CHECK(tested > 100);
  }

  TEST_CASE("smith_normal_form examples") {
    auto check = [](const IntRows& rows, const IntRows& expected) {
      const auto M = IntMatrix::from_rows(rows);
      const SmithForm s = smith_normal_form(M);
      CHECK(s.D == IntMatrix::from_rows(expected));
      CHECK(s.U * M * s.V == s.D);
      CHECK(std::abs(determinant(s.U)) == 1);
      CHECK(std::abs(determinant(s.V)) == 1);
    };
    check({{1, 0}, {0, 1}}, {{1, 0}, {0, 1}});
    check({{2, 0}, {0, 3}}, {{1, 0}, {0, 6}});
    check({{1, 1}, {0, 2}}, {{1, 0}, {0, 2}});
    check({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, {{2, 0, 0}, {0, 6, 0}, {0, 0, 12}});
    CHECK_THROWS_AS(smith_normal_form(IntMatrix::from_rows({{1, 2}, {2, 4}})), Error);
  }

  TEST_CASE("coset_representatives examples") {
    auto c = coset_representatives(IntMatrix::identity(3));
    CHECK(c.group_order == 1);
    CHECK(c.representatives == std::vector<IntVector>{{0, 0, 0}});

    c = coset_representatives(IntMatrix::from_rows({{1, 0}, {0, 2}}));
    CHECK(c.group_order == 2);
    CHECK(c.representatives == std::vector<IntVector>{{0, 0}, {0, 1}});

    CHECK(coset_representatives(IntMatrix::from_rows({{1, 1}, {0, 1}})).group_order == 1);
  }

  TEST_CASE("coset count equals |det| by brute force") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> entry(-3, 3);
    int tested = 0;
    for (std::size_t n : {2u, 3u}) {
      for (int trial = 0; trial < 100; ++trial) {
        IntRows rows(n, IntVector(n));
        for (auto& row : rows)
          for (auto& v : row) v = entry(rng);
        const std::int64_t det = det_small(rows);
        if (det == 0 || std::abs(det) > 12) continue;
        const auto M = IntMatrix::from_rows(rows);
        const CosetSet cosets = coset_representatives(M);
        CHECK(cosets.group_order == std::abs(det));
        CHECK(cosets.representatives.size() == static_cast<std::size_t>(std::abs(det)));
        CHECK(brute_force_order(rows) == static_cast<std::size_t>(std::abs(det)));
        // Representatives fall into pairwise distinct classes.
        std::set<IntVector> keys;
        for (const auto& w : cosets.representatives) keys.insert(coset_key(adjugate(rows), w, det));
        CHECK(keys.size() == cosets.representatives.size());
        ++tested;
      }
    }
    MESSAGE("bases tested: " << tested);
    CHECK(tested > 50);
  }

  TEST_CASE("same_coset") {
    const auto M = IntMatrix::from_rows({{2, 0}, {0, 3}});
    CHECK(same_coset(M, {1, 1}, {3, 4}));
    CHECK_FALSE(same_coset(M, {1, 1}, {2, 1}));
  }

  TEST_CASE("independent_subsets") {
    const IntRows family{{1, 0}, {0, 1}, {1, 1}, {2, 2}};
    const auto subsets = independent_subsets(family, 2);
    // {3,4} is dependent; the other five pairs are bases.
    CHECK(subsets.size() == 5);
    CHECK(subsets.front() == IndexSet{0, 1});
    CHECK(std::find(subsets.begin(), subsets.end(), IndexSet{2, 3}) == subsets.end());
  }

  TEST_CASE("choose_rho examples") {
    const IntRows mt3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
    const RhoVector rho = choose_rho(mt3);
    CHECK(rho.coords == std::vector<Rational>{q(1), q(2), q(3)});
    CHECK_FALSE(rho.certificate.empty());
    for (const auto& p : rho.certificate) CHECK(p.value != 0);

    CHECK(choose_rho({{1}}).coords == std::vector<Rational>{q(1)});

    // (1, 2) is itself a member, so the first candidate sits on a hyperplane.
    const RhoVector next = choose_rho({{1, 0}, {0, 1}, {1, 2}});
    CHECK(next.coords == std::vector<Rational>{q(1), q(3)});

    CHECK(choose_rho(mt3).coords == rho.coords);
    CHECK(choose_rho(mt3, RhoLadder::Reversed).coords != rho.coords);
    CHECK(choose_rho(mt3, RhoLadder::Negated).coords != rho.coords);
    CHECK_THROWS_AS(choose_rho({{1, 1}, {2, 2}}), Error);
  }

  TEST_CASE("fractional_part examples and range") {
    const std::vector<Rational> zero{q(0), q(0)};
    CHECK(fractional_part(zero, {q(1), q(0)}, {q(1), q(2)}) == 0);
    CHECK(fractional_part(zero, {q(-1), q(0)}, {q(1), q(2)}) == 1);
    CHECK(fractional_part({q(7, 3), q(0)}, {q(1), q(0)}, {q(1), q(2)}) == q(1, 3));
    CHECK(fractional_part({q(7, 3), q(0)}, {q(-1), q(0)}, {q(1), q(2)}) == q(2, 3));
    CHECK_THROWS_AS(fractional_part(zero, {q(2), q(-1)}, {q(1), q(2)}), Error);

    std::mt19937 rng(99);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
    for (int trial = 0; trial < 300; ++trial) {
      const std::vector<Rational> y{q(num(rng), den(rng)), q(num(rng), den(rng))};
      const std::vector<Rational> d{q(num(rng), den(rng)), q(num(rng), den(rng))};
      const std::vector<Rational> rho{q(1), q(2)};
      const Rational pairing = dot(rho, d);
      if (pairing == 0) continue;
      const Rational f = fractional_part(y, d, rho);
      if (pairing > 0) {
        CHECK(f >= 0);
        CHECK(f < 1);
      } else {
        CHECK(f > 0);
        CHECK(f <= 1);
      }
      CHECK(frac(f - dot(y, d)) == 0);
    }
  }
}
