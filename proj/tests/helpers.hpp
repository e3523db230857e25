#pragma once

#include <random>
#include <vector>

#include "dparity/model.hpp"

namespace testing {

inline std::vector<dparity::Rational> zeros(std::size_t n) { return std::vector<dparity::Rational>(n, dparity::Rational(0)); }

inline dparity::SeriesSpec mt(const dparity::IntVector& h, std::int64_t k, std::vector<dparity::Rational> y = {}) {
  if (y.empty()) y = zeros(h.size());
  return dparity::validate_spec({dparity::IntVector(h.size(), 1)}, h, {k}, y);
}

inline dparity::Rational q(std::int64_t p, std::int64_t d = 1) { return dparity::make_rational(p, d); }

}  // namespace testing
