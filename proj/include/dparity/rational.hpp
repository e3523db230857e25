#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dparity {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

/// Builds p/q in canonical form.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p/q", "p" or "-p/q". Throws Error(ParseError) on malformed input
/// or a zero denominator.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& value);

Integer floor(const Rational& value);

/// x - floor(x), always in [0, 1).
Rational frac(const Rational& value);

/// e(theta) = exp(2 pi i theta) for exact theta. The argument is reduced to
/// (-1/2, 1/2] before the transcendental call so that e(-theta) is bitwise the
/// conjugate of e(theta); quarter turns are returned exactly.
Complex unit_phase(const Rational& theta);

double to_double(const Rational& value);

std::int64_t to_int64(const Integer& value);

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

}  // namespace dparity
