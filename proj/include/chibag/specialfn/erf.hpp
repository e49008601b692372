#ifndef CHIBAG_SPECIALFN_ERF_HPP
#define CHIBAG_SPECIALFN_ERF_HPP

#include <cmath>
#include <limits>
#include <numbers>

namespace chibag::specialfn {

inline double erf(double x) { return std::erf(x); }
inline double erfc(double x) { return std::erfc(x); }

/// Scaled complementary error function e^{x^2} erfc(x), finite for all x
/// where the product is representable.
inline double erfcx(double x) {
  if (x < 25.0) {
    if (x < -26.0) return std::numeric_limits<double>::infinity();
    return std::exp(x * x) * std::erfc(x);
  }
  // Asymptotic series; at x >= 25 the 10th term is below 1e-25.
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 10; ++k) {
    term *= -(2.0 * k - 1.0) * inv2x2;
    sum += term;
  }
  return sum / (x * std::sqrt(std::numbers::pi));
}

}  // namespace chibag::specialfn

#endif  // CHIBAG_SPECIALFN_ERF_HPP
