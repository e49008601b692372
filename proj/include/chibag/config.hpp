#ifndef CHIBAG_CONFIG_HPP
#define CHIBAG_CONFIG_HPP

namespace chibag {

// Tolerances shared by the series and quadrature routines.
struct EvalConfig {
  double series_tol = 1.1102230246251565e-16;  // relative truncation, 2^-53
  int max_terms = 200000;
  double quadrature_tol = 1e-13;
};

}  // namespace chibag

#endif  // CHIBAG_CONFIG_HPP
