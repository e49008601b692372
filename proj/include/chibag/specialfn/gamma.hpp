#ifndef CHIBAG_SPECIALFN_GAMMA_HPP
#define CHIBAG_SPECIALFN_GAMMA_HPP

#include <cmath>
#include <string>

#include "chibag/errors.hpp"

namespace chibag::specialfn {

inline bool is_nonpositive_integer(double x, double tol = 1e-12) {
  return x <= tol && std::abs(x - std::round(x)) <= tol;
}

/// Euler gamma function. Throws PoleError at 0, -1, -2, ...
inline double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw PoleError("gamma_fn: pole at x = " + std::to_string(x));
  return std::tgamma(x);
}

/// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1).
inline double pochhammer(double a, int n) {
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

}  // namespace chibag::specialfn

#endif  // CHIBAG_SPECIALFN_GAMMA_HPP
