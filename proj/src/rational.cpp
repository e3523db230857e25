#include "dparity/rational.hpp"

#include <cmath>
#include <numbers>

#include "dparity/error.hpp"

namespace dparity {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  Rational q(Integer(std::to_string(num)), Integer(std::to_string(den)));
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  auto valid_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den))
    throw Error(ErrorKind::ParseError, "malformed rational '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Integer d(den);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational frac(const Rational& value) { return value - Rational(floor(value)); }

Complex unit_phase(const Rational& theta) {
  Rational t = frac(theta);
  // Quarter turns are exact.
  Rational four_t = 4 * t;
  if (four_t.get_den() == 1) {
    switch (four_t.get_num().get_si()) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  if (t > Rational(1, 2)) t -= 1;
  const double angle = 2.0 * std::numbers::pi * to_double(t);
  return {std::cos(angle), std::sin(angle)};
}

double to_double(const Rational& value) { return value.get_d(); }

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) throw Error(ErrorKind::DimensionMismatch, "integer out of range");
  return value.get_si();
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product of unequal lengths");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace dparity
