#pragma once

#include <cmath>

#include "dparity/rational.hpp"

namespace dparity {

// Neumaier-compensated accumulation, real and imaginary parts independently.
class CompensatedSum {
 public:
  void add(Complex term) {
    const Complex next = sum_ + term;
    comp_ += Complex(correction(sum_.real(), term.real(), next.real()),
                     correction(sum_.imag(), term.imag(), next.imag()));
    sum_ = next;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  Complex value() const { return sum_ + comp_; }

 private:
  static double correction(double s, double x, double next) {
    return std::abs(s) >= std::abs(x) ? (s - next) + x : (x - next) + s;
  }

  Complex sum_{};
  Complex comp_{};
};

}  // namespace dparity
