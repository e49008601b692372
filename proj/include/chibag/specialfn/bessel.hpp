#ifndef CHIBAG_SPECIALFN_BESSEL_HPP
#define CHIBAG_SPECIALFN_BESSEL_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "chibag/errors.hpp"

namespace chibag::specialfn {

namespace detail {

inline void check_bessel_args(int order, double x) {
  if (order < 0) throw DomainError("bessel_j: negative order " + std::to_string(order));
  if (!(x >= 0.0) || !std::isfinite(x))
    throw DomainError("bessel_j: argument must be finite and >= 0");
}

// Start index for Miller's backward recurrence: far enough into the region
// where J_k(x) decays super-exponentially that the seed error is negligible.
inline int miller_start(int order, double x) {
  const double base = std::max(static_cast<double>(order), x);
  int start = static_cast<int>(base + 30.0 + 4.0 * std::sqrt(base)) + 2;
  return start + (start & 1);
}

}  // namespace detail

/// J_0(x), ..., J_{max_order}(x) by Miller's backward recurrence normalised
/// with J_0 + 2 sum_k J_{2k} = 1.
inline std::vector<double> bessel_j_sequence(int max_order, double x) {
  detail::check_bessel_args(max_order, x);
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x < 1e-5) {
    // Two-term power series; the first omitted term is O(x^4) relative.
    const double q = 0.25 * x * x;
    double lead = 1.0;  // (x/2)^n / n!
    for (int n = 0; n <= max_order; ++n) {
      if (n > 0) lead *= 0.5 * x / n;
      out[static_cast<std::size_t>(n)] = lead * (1.0 - q / (n + 1));
    }
    return out;
  }
  const int start = detail::miller_start(max_order, x);
  constexpr double kBig = 1e250;
  double next = 0.0;    // J_{k+1}, unnormalised
  double cur = 1e-300;  // J_k
  double norm = 0.0;    // 2 * sum of even orders >= 2
  for (int k = start; k >= 1; --k) {
    const double prev = (2.0 * k / x) * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    const int idx = k - 1;
    if (idx <= max_order) out[static_cast<std::size_t>(idx)] = cur;
    if (idx > 0 && idx % 2 == 0) norm += 2.0 * cur;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      next /= kBig;
      norm /= kBig;
      for (int j = idx; j <= max_order; ++j) out[static_cast<std::size_t>(j)] /= kBig;
    }
  }
  norm += cur;
  for (double& v : out) v /= norm;
  return out;
}

/// J_p(x) for integer p >= 0 and x >= 0.
inline double bessel_j(int order, double x) {
  detail::check_bessel_args(order, x);
  return bessel_j_sequence(order, x)[static_cast<std::size_t>(order)];
}

/// The pair (J_p(x), J_{p+1}(x)) from a single recurrence pass.
struct BesselPair {
  double j_p;
  double j_p1;
};

inline BesselPair bessel_j_pair(int order, double x) {
  const auto seq = bessel_j_sequence(order + 1, x);
  return {seq[static_cast<std::size_t>(order)], seq[static_cast<std::size_t>(order) + 1]};
}

/// J_p'(x) = (J_{p-1}(x) - J_{p+1}(x)) / 2, with J_{-1} = -J_1.
inline double bessel_j_prime(int order, double x) {
  detail::check_bessel_args(order, x);
  const auto seq = bessel_j_sequence(order + 1, x);
  if (order == 0) return -seq[1];
  return 0.5 * (seq[static_cast<std::size_t>(order) - 1] - seq[static_cast<std::size_t>(order) + 1]);
}

/// J_{p+1}(x) / J_p(x) via the backward continued fraction. Stays finite where
/// J_p itself underflows (x << p); infinite at zeros of J_p.
inline double bessel_j_ratio(int order, double x) {
  detail::check_bessel_args(order, x);
  if (x == 0.0) return 0.0;
  const int start = detail::miller_start(order, x);
  double ratio = 0.0;  // J_{k}/J_{k-1} for k = start + 1
  for (int k = start; k > order; --k) ratio = 1.0 / (2.0 * k / x - ratio);
  return ratio;
}

}  // namespace chibag::specialfn

#endif  // CHIBAG_SPECIALFN_BESSEL_HPP
