#pragma once

#ifdef __FAST_MATH__
#error "fast math (-ffast-math) would negate compensated summation"
#endif

#include <cmath>

namespace pball {

// Kahan-Babuska (Neumaier) compensated accumulator. Unlike plain Kahan
// summation it also compensates when the incoming term is larger than the
// running sum.
struct NeumaierSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }

  double total() const { return sum + carry; }
};

}  // namespace pball
