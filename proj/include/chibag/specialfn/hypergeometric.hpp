#ifndef CHIBAG_SPECIALFN_HYPERGEOMETRIC_HPP
#define CHIBAG_SPECIALFN_HYPERGEOMETRIC_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "chibag/config.hpp"
#include "chibag/errors.hpp"
#include "chibag/specialfn/gamma.hpp"
#include "chibag/summation.hpp"

namespace chibag::specialfn {

/// How hyp2f1 evaluates its argument.
enum class Hyp2f1Route {
  automatic,      // terminating polynomial if possible, else Pfaff + series
  pfaff_series,   // Pfaff-transform z < 0 into a series that does not terminate
                  // when such an orientation exists; no termination test
};

namespace detail {

inline std::optional<int> nonpositive_integer_degree(double p) {
  if (!is_nonpositive_integer(p)) return std::nullopt;
  return static_cast<int>(-std::round(p));
}

// Degree of the terminating polynomial when a or b is 0, -1, -2, ...
inline std::optional<int> terminating_degree(double a, double b) {
  const auto da = nonpositive_integer_degree(a);
  const auto db = nonpositive_integer_degree(b);
  if (da && db) return std::min(*da, *db);
  return da ? da : db;
}

inline double hyp2f1_polynomial(double a, double b, double c, double z, int degree) {
  CompensatedSum sum;
  double term = 1.0;
  sum += term;
  for (int n = 0; n < degree; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
  }
  return sum.value();
}

// Plain Gauss series; requires |z| < 1 (callers guarantee 0 <= z < 1 or a
// terminating parameter).
inline double hyp2f1_series(double a, double b, double c, double z, const EvalConfig& cfg) {
  CompensatedSum sum;
  double term = 1.0;
  sum += term;
  int small_in_a_row = 0;
  for (int n = 0; n < cfg.max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum.value();
    if (std::abs(term) <= cfg.series_tol * std::abs(sum.value())) {
      // Two consecutive small terms guard against an accidental near-zero.
      if (++small_in_a_row >= 2) return sum.value();
    } else {
      small_in_a_row = 0;
    }
  }
  throw ConvergenceError("hyp2f1: series did not converge in " +
                         std::to_string(cfg.max_terms) + " terms (z = " + std::to_string(z) + ")");
}

}  // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.
///
/// A non-positive integer a or b gives an exact finite polynomial. Otherwise
/// z < 0 is mapped into [0, 1) with the Pfaff transformation
///   2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)),
/// choosing the (a <-> b) orientation that terminates when one does.
inline double hyp2f1(double a, double b, double c, double z, const EvalConfig& cfg = {},
                     Hyp2f1Route route = Hyp2f1Route::automatic) {
  if (is_nonpositive_integer(c))
    throw DomainError("hyp2f1: c = " + std::to_string(c) + " is a non-positive integer");
  if (!(z < 1.0)) throw DomainError("hyp2f1: requires z < 1, got " + std::to_string(z));

  if (route == Hyp2f1Route::pfaff_series) {
    if (z >= 0.0) return detail::hyp2f1_series(a, b, c, z, cfg);
    const double w = z / (z - 1.0);
    if (detail::terminating_degree(a, c - b) && !detail::terminating_degree(c - a, b))
      return std::pow(1.0 - z, -b) * detail::hyp2f1_series(c - a, b, c, w, cfg);
    return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w, cfg);
  }

  if (auto degree = detail::terminating_degree(a, b))
    return detail::hyp2f1_polynomial(a, b, c, z, *degree);
  if (z >= 0.0) return detail::hyp2f1_series(a, b, c, z, cfg);

  const double w = z / (z - 1.0);
  if (auto degree = detail::nonpositive_integer_degree(c - b)) {
    return std::pow(1.0 - z, -a) * detail::hyp2f1_polynomial(a, c - b, c, w, *degree);
  }
  if (auto degree = detail::nonpositive_integer_degree(c - a)) {
    return std::pow(1.0 - z, -b) * detail::hyp2f1_polynomial(c - a, b, c, w, *degree);
  }
  return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w, cfg);
}

}  // namespace chibag::specialfn

#endif  // CHIBAG_SPECIALFN_HYPERGEOMETRIC_HPP
