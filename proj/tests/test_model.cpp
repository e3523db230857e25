#include <doctest.h>

#include <random>

#include "dparity/error.hpp"
#include "dparity/model.hpp"
#include "helpers.hpp"

using namespace dparity;
using testing::q;
using testing::zeros;

namespace {

ErrorKind kind_of(const IntRows& A, const IntVector& h, const IntVector& k) {
  try {
    validate_spec(A, h, k, zeros(h.size()));
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ParseError;  // stands for "accepted"
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("validate_spec examples") {
    const SeriesSpec spec = validate_spec({{1, 1}}, {1, 1}, {1}, zeros(2));
    CHECK(spec.r() == 2);
    CHECK(spec.ell() == 1);
    CHECK(spec.weight() == 3);
    CHECK_FALSE(spec.twisted());

    try {
      validate_spec({{1, 0}, {0, 0}}, {1, 1}, {1, 1}, zeros(2));
      FAIL("expected ZeroRow");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ZeroRow);
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
    try {
      validate_spec({{1, 0}, {1, 0}}, {1, 1}, {1, 1}, zeros(2));
      FAIL("expected ZeroColumn");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ZeroColumn);
      CHECK(std::string(e.what()).find("column 2") != std::string::npos);
    }
  }

  TEST_CASE("validate_spec rejects bad exponents and shapes") {
    CHECK(kind_of({{1, 1}}, {0, 1}, {1}) == ErrorKind::NonPositiveExponent);
    CHECK(kind_of({{1, 1}}, {1, 1}, {0}) == ErrorKind::NonPositiveExponent);
    CHECK(kind_of({{1, 1}}, {1}, {1}) == ErrorKind::DimensionMismatch);
    CHECK(kind_of({{1, 1}}, {1, 1}, {1, 1}) == ErrorKind::DimensionMismatch);
    CHECK(kind_of({{1, 1}, {1}}, {1, 1}, {1, 1}) == ErrorKind::DimensionMismatch);
    CHECK_THROWS_AS(validate_spec({{1, 1}}, {1, 1}, {1}, zeros(1)), Error);
  }

  TEST_CASE("twist is reduced mod 1 and negated") {
    const SeriesSpec spec = validate_spec({{1, 1}}, {1, 1}, {1}, {q(7, 3), q(-1, 2)});
    CHECK(spec.y()[0] == q(1, 3));
    CHECK(spec.y()[1] == q(1, 2));
    CHECK(spec.twisted());
    const SeriesSpec minus = spec.negated_twist();
    CHECK(minus.y()[0] == q(2, 3));
    CHECK(minus.y()[1] == q(1, 2));
  }

  TEST_CASE("validate_spec agrees with a row/column scan") {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> dim(1, 4);
    std::discrete_distribution<int> entry({5, 3, 1, 1});  // mostly zeros
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t ell = static_cast<std::size_t>(dim(rng)), r = static_cast<std::size_t>(dim(rng));
      IntRows A(ell, IntVector(r));
      for (auto& row : A)
        for (auto& v : row) v = entry(rng);
      bool zero_row = false, zero_col = false;
      for (const auto& row : A) zero_row = zero_row || std::all_of(row.begin(), row.end(), [](auto v) { return v == 0; });
      for (std::size_t j = 0; j < r; ++j) {
        bool any = false;
        for (const auto& row : A) any = any || row[j] != 0;
        zero_col = zero_col || !any;
      }
      const ErrorKind got = kind_of(A, IntVector(r, 1), IntVector(ell, 1));
      if (zero_row)
        CHECK(got == ErrorKind::ZeroRow);
      else if (zero_col)
        CHECK(got == ErrorKind::ZeroColumn);
      else
        CHECK(got == ErrorKind::ParseError);
    }
  }

  TEST_CASE("subset_context examples") {
    const SeriesSpec mt = testing::mt({1, 1}, 1);
    auto ctx = subset_context(mt, {0});
    CHECK(ctx.I == IndexSet{0});
    CHECK(ctx.Ibar.empty());
    CHECK(ctx.Jbar == IndexSet{1});

    const SeriesSpec diag = validate_spec({{1, 0}, {0, 1}}, {1, 1}, {1, 1}, zeros(2));
    ctx = subset_context(diag, {0});
    CHECK(ctx.I == IndexSet{0});
    CHECK(ctx.Ibar == IndexSet{1});

    ctx = subset_context(mt, {0, 1});
    CHECK(ctx.I == IndexSet{0});
    CHECK(ctx.Jbar.empty());

    CHECK_THROWS_AS(subset_context(mt, {}), Error);
    CHECK(format_set({0, 2}) == "{1,3}");
  }

  TEST_CASE("subset_context is idempotent and I is monotone in J") {
    const SeriesSpec spec = validate_spec({{1, 0, 0}, {0, 2, 0}, {1, 1, 0}, {0, 0, 3}}, {1, 1, 1}, {1, 1, 1, 1}, zeros(3));
    const auto subsets = nonempty_subsets(3);
    CHECK(subsets.size() == 7);
    for (const auto& J : subsets) {
      const auto ctx = subset_context(spec, J);
      const auto again = subset_context(spec, ctx.J);
      CHECK(again.I == ctx.I);
      CHECK(again.Jbar == ctx.Jbar);
      CHECK(ctx.I.size() + ctx.Ibar.size() == spec.ell());
      CHECK(ctx.J.size() + ctx.Jbar.size() == spec.r());
      CHECK_FALSE(ctx.I.empty());
      for (const auto& J2 : subsets) {
        if (!std::includes(J2.begin(), J2.end(), J.begin(), J.end())) continue;
        const auto wider = subset_context(spec, J2);
        CHECK(std::includes(wider.I.begin(), wider.I.end(), ctx.I.begin(), ctx.I.end()));
      }
    }
  }

  TEST_CASE("convergence_check") {
    CHECK(convergence_check(testing::mt({1, 1, 1}, 1)).status == ConvergenceStatus::ProvedSufficient);
    CHECK(convergence_check(testing::mt({3, 1}, 5)).status == ConvergenceStatus::ProvedSufficient);
    // Root-system shape: each column has its own single-support row.
    const SeriesSpec a2 = validate_spec({{1, 0}, {0, 1}, {1, 1}}, {1, 1}, {1, 1, 1}, zeros(2));
    CHECK(convergence_check(a2).status == ConvergenceStatus::ProvedSufficient);
    // Two rows both mixing the columns, h = 1: not covered.
    const SeriesSpec mixed = validate_spec({{1, 1}, {1, 2}}, {1, 1}, {1, 1}, zeros(2));
    CHECK(convergence_check(mixed).status == ConvergenceStatus::Unknown);
    CHECK(convergence_check(mixed, true).status == ConvergenceStatus::UserAsserted);
  }
}
