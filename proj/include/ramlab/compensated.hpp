#pragma once

#include <cmath>

namespace ramlab {

// Kahan-Babuska-Neumaier accumulator
struct CompensatedSum {
  long double sum = 0;
  long double carry = 0;

  void add(long double x) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  long double value() const { return sum + carry; }
};

}  // namespace ramlab
