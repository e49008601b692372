#ifndef CHIBAG_SPECIALFN_ZETA_HPP
#define CHIBAG_SPECIALFN_ZETA_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "chibag/config.hpp"
#include "chibag/errors.hpp"
#include "chibag/quadrature.hpp"
#include "chibag/summation.hpp"

namespace chibag::specialfn {

namespace detail {

// B_{2k} / (2k)! for k = 1..12.
inline constexpr std::array<double, 12> kBernoulliOverFactorial = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225828e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812523e-19,
};

// Euler-Maclaurin for sum_{n>=0} (n+a)^{-s}: explicit sum of the first
// `shift` terms, integral, half-term and 12 Bernoulli corrections.
inline double hurwitz_euler_maclaurin(double s, double a, int shift) {
  CompensatedSum sum;
  for (int n = shift - 1; n >= 0; --n) sum += std::pow(n + a, -s);
  const double x = shift + a;
  sum += std::pow(x, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(x, -s);
  double rising = s;             // s (s+1) ... (s+2k-2)
  double power = std::pow(x, -s - 1.0);  // x^{-s-2k+1}
  for (int k = 1; k <= 12; ++k) {
    sum += kBernoulliOverFactorial[static_cast<std::size_t>(k - 1)] * rising * power;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    power /= x * x;
  }
  return sum.value();
}

// Hermite's representation
//   zeta(s,a) = a^{-s}/2 + a^{1-s}/(s-1)
//             + 2 int_0^inf sin(s atan(t/a)) (a^2+t^2)^{-s/2} / (e^{2 pi t} - 1) dt,
// valid for every s != 1 and free of the cancellation that Euler-Maclaurin
// suffers for large negative s.
inline double hurwitz_hermite(double s, double a, const EvalConfig& cfg) {
  auto integrand = [s, a](double t) {
    if (t == 0.0) return s / (2.0 * std::numbers::pi) * std::pow(a, -s - 1.0);
    return std::sin(s * std::atan(t / a)) * std::pow(a * a + t * t, -0.5 * s) /
           std::expm1(2.0 * std::numbers::pi * t);
  };
  // The integrand decays like t^{|s|} e^{-2 pi t}; 60 + 2|s| leaves < 1e-20.
  const double upper = 60.0 + 2.0 * std::abs(s) + a;
  quadrature::Options opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = cfg.quadrature_tol;
  opts.max_intervals = 20000;
  const double integral = quadrature::integrate(integrand, 0.0, upper, opts).value;
  return 0.5 * std::pow(a, -s) + std::pow(a, 1.0 - s) / (s - 1.0) + 2.0 * integral;
}

}  // namespace detail

/// Hurwitz zeta function sum_{n>=0} (n+a)^{-s}, analytically continued to s != 1.
inline double hurwitz_zeta(double s, double a, const EvalConfig& cfg = {}) {
  if (s == 1.0) throw PoleError("hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta: requires a > 0");
  if (s <= 0.0 && s == std::floor(s)) {
    // The correction series terminates: the N = 0 formula is the exact
    // Bernoulli polynomial -B_{1-s}(a)/(1-s) as long as 1-s <= 24.
    if (s >= -22.0) return detail::hurwitz_euler_maclaurin(s, a, 0);
    return detail::hurwitz_hermite(s, a, cfg);
  }
  if (s > 0.0) return detail::hurwitz_euler_maclaurin(s, a, 25);
  return detail::hurwitz_hermite(s, a, cfg);
}

/// Coefficients e_j(a) with binom(m+n-2, n) = sum_j e_j(a) (n+a)^j.
inline std::vector<double> barnes_coefficients(double a, int m) {
  if (m < 2 || m % 2 != 0) throw DomainError("barnes: m must be an even integer >= 2");
  // binom(m+n-2, n) = prod_{k=1}^{m-2} (n + k) / (m-2)!, and n + k = x - a + k.
  std::vector<double> poly{1.0};  // coefficients in x = n + a, ascending
  double factorial = 1.0;
  for (int k = 1; k <= m - 2; ++k) {
    const double shift = k - a;
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j] += shift * poly[j];
      next[j + 1] += poly[j];
    }
    poly = std::move(next);
    factorial *= k;
  }
  for (double& c : poly) c /= factorial;
  return poly;
}

/// Barnes zeta sum_{n>=0} binom(m+n-2, n) (n+a)^{-s}, via
/// sum_j e_j(a) zeta_H(s - j, a). Poles at s = j + 1 where e_j(a) != 0.
/// Where the series converges, the first terms are summed explicitly and
/// the expansion is applied to the tail only, which keeps the alternating
/// e_j(a) from cancelling against each other.
inline double barnes_zeta(double s, double a, int m, const EvalConfig& cfg = {}) {
  if (!(a > 0.0)) throw DomainError("barnes_zeta: requires a > 0");
  const auto coeffs = barnes_coefficients(a, m);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0.0 && s - static_cast<double>(j) == 1.0)
      throw PoleError("barnes_zeta: pole at s = " + std::to_string(s));

  const int head = s > m - 1 ? 64 : 0;
  CompensatedSum sum;
  double binom = 1.0;  // binom(m+n-2, n)
  for (int n = 0; n < head; ++n) {
    sum += binom * std::pow(n + a, -s);
    binom *= static_cast<double>(m + n - 1) / (n + 1);
  }
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0.0) continue;
    sum += coeffs[j] * hurwitz_zeta(s - static_cast<double>(j), a + head, cfg);
  }
  return sum.value();
}

/// Residue of the Barnes zeta function at the integer s0 in {1, ..., m-1}.
inline double barnes_residue(int s0, double a, int m) {
  if (s0 < 1 || s0 > m - 1)
    throw DomainError("barnes_residue: s0 must lie in {1, ..., m-1}");
  return barnes_coefficients(a, m)[static_cast<std::size_t>(s0 - 1)];
}

}  // namespace chibag::specialfn

#endif  // CHIBAG_SPECIALFN_ZETA_HPP
