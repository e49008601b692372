#ifndef CHIBAG_BALL_SPECTRUM_HPP
#define CHIBAG_BALL_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chibag/coefficients.hpp"
#include "chibag/errors.hpp"
#include "chibag/quadrature.hpp"
#include "chibag/specialfn.hpp"
#include "chibag/summation.hpp"

namespace chibag {

/// The root scan and the sign-change audit disagree.
class RootCountMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectral cutoffs too small for the requested accuracy.
class InsufficientCutoff : public std::runtime_error {
 public:
  InsufficientCutoff(const std::string& what, double bound)
      : std::runtime_error(what + " (bound " + std::to_string(bound) + ")"), bound_(bound) {}
  double bound() const noexcept { return bound_; }

 private:
  double bound_;
};

/// Least-squares system too ill-conditioned to trust.
class IllConditioned : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (+) / (-) superscript of the ball eigenspinor.
enum class Chirality { plus_branch, minus_branch };
/// Sign subscript of the eigenvalue.
enum class EigenSign { pos, neg };

inline const char* to_string(Chirality c) { return c == Chirality::plus_branch ? "plus" : "minus"; }
inline const char* to_string(EigenSign s) { return s == EigenSign::pos ? "pos" : "neg"; }

/// One of the four Bessel conditions J_{p+1}(mu) = r J_p(mu) for angular
/// momentum n, with p = n + m/2 - 1.
struct EigenvalueFamily {
  Chirality chirality = Chirality::plus_branch;
  EigenSign sign = EigenSign::pos;
  int n = 0;
  int m = 2;
  int p = 0;
  double theta = 0.0;
  double ratio = 1.0;

  static EigenvalueFamily make(Chirality chirality, EigenSign sign, int n, int m, double theta) {
    check_even_dimension(m, "EigenvalueFamily");
    if (n < 0) throw DomainError("EigenvalueFamily: n must be >= 0");
    if (!std::isfinite(theta)) throw DomainError("EigenvalueFamily: theta must be finite");
    EigenvalueFamily f;
    f.chirality = chirality;
    f.sign = sign;
    f.n = n;
    f.m = m;
    f.p = n + m / 2 - 1;
    f.theta = theta;
    const bool plus = chirality == Chirality::plus_branch;
    const bool pos = sign == EigenSign::pos;
    const double e = std::exp(plus ? theta : -theta);
    f.ratio = plus == pos ? e : -e;
    return f;
  }

  /// +1 for the (+) chirality, -1 for (-).
  int orientation() const { return chirality == Chirality::plus_branch ? 1 : -1; }

  double condition(double mu) const {
    const auto j = specialfn::bessel_j_pair(p, mu);
    return j.j_p1 - ratio * j.j_p;
  }
};

inline std::vector<EigenvalueFamily> all_families(int n, int m, double theta) {
  std::vector<EigenvalueFamily> out;
  for (auto c : {Chirality::plus_branch, Chirality::minus_branch})
    for (auto s : {EigenSign::pos, EigenSign::neg}) out.push_back(EigenvalueFamily::make(c, s, n, m, theta));
  return out;
}

struct RootSet {
  EigenvalueFamily family;
  std::vector<double> roots;
  double mu_max = 0.0;
};

/// d_n(m) = d_s binom(m+n-2, n) / 2, exact.
inline std::int64_t degeneracy(int n, int m) {
  check_even_dimension(m, "degeneracy");
  if (n < 0) throw DomainError("degeneracy: n must be >= 0");
  // binom(m+n-2, n) built up as binom(n+k, k) for k = 1..m-2, each step exact.
  std::int64_t binom = 1;
  for (int k = 1; k <= m - 2; ++k) {
    std::int64_t next = 0;
    if (__builtin_mul_overflow(binom, static_cast<std::int64_t>(n + k), &next))
      throw DomainError("degeneracy: overflow");
    binom = next / k;
  }
  return binom << (m / 2 - 1);
}

namespace detail {

// Safeguarded Newton on a function with a sign change in [lo, hi].
template <class F>
double bracketed_newton(F&& value_and_slope, double lo, double hi, double f_lo) {
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const auto [f, df] = value_and_slope(x);
    if (f == 0.0) return x;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x - f / df;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x)) || hi - lo <= 4e-16 * hi)
      return next;
    x = next;
  }
  return x;
}

}  // namespace detail

/// Positive zeros of J_p in (0, x_max], in increasing order. J_p has no zero
/// below p and consecutive zeros are more than 3 apart, so a unit-step sign
/// scan sees each one exactly once.
inline std::vector<double> bessel_zeros(int p, double x_max) {
  std::vector<double> zeros;
  double a = std::max(static_cast<double>(p), 1e-3);
  double fa = specialfn::bessel_j(p, a);
  while (a < x_max) {
    const double b = std::min(a + 1.0, x_max);
    const double fb = specialfn::bessel_j(p, b);
    if (fb == 0.0) {
      zeros.push_back(b);
    } else if ((fa < 0.0) != (fb < 0.0) && fa != 0.0) {
      zeros.push_back(detail::bracketed_newton(
          [p](double x) {
            const auto j = specialfn::bessel_j_pair(p, x);
            return std::pair{j.j_p, p / x * j.j_p - j.j_p1};
          },
          a, b, fa));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

namespace detail {

inline std::pair<double, double> condition_and_slope(const EigenvalueFamily& f, double mu) {
  const auto j = specialfn::bessel_j_pair(f.p, mu);
  const double djp = f.p / mu * j.j_p - j.j_p1;
  const double djp1 = j.j_p - (f.p + 1) / mu * j.j_p1;
  return {j.j_p1 - f.ratio * j.j_p, djp1 - f.ratio * djp};
}

// Sign of g(mu) = J_{p+1} - r J_p. Below the first zero of J_p, where J_p > 0
// but may underflow, it is the sign of the ratio minus r.
inline int condition_sign(const EigenvalueFamily& f, double mu, double first_zero) {
  double v;
  if (mu < first_zero) {
    v = specialfn::bessel_j_ratio(f.p, mu) - f.ratio;
  } else {
    v = f.condition(mu);
  }
  return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
}

inline std::size_t audit_count(const EigenvalueFamily& f, double mu_max, double first_zero) {
  constexpr double kStep = 0.05;
  std::size_t changes = 0;
  int last = 0;
  const auto steps = static_cast<long>(std::floor(mu_max / kStep));
  for (long k = 1; k <= steps + 1; ++k) {
    const double mu = std::min(static_cast<double>(k) * kStep, mu_max);
    const int s = condition_sign(f, mu, first_zero);
    if (s != 0) {
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    if (mu >= mu_max) break;
  }
  return changes;
}

inline RootSet find_roots_with_zeros(const EigenvalueFamily& f, double mu_max,
                                     const std::vector<double>& zeros, bool audit) {
  RootSet set{f, {}, mu_max};
  const double first_zero = zeros.empty() ? std::numeric_limits<double>::infinity() : zeros.front();

  // (0, j_1): J_{p+1}/J_p rises from 0 to +inf, so one root iff r > 0.
  if (f.ratio > 0.0) {
    const double hi = std::min(first_zero, mu_max);
    const double r_hi = hi == first_zero ? std::numeric_limits<double>::infinity()
                                         : specialfn::bessel_j_ratio(f.p, hi);
    if (r_hi > f.ratio) {
      const int p = f.p;
      const double lo = 1e-12;
      set.roots.push_back(bracketed_newton(
          [p, &f](double mu) {
            const double r = specialfn::bessel_j_ratio(p, mu);
            return std::pair{r - f.ratio, 1.0 + r * r - (2.0 * p + 1.0) * r / mu};
          },
          lo, hi, specialfn::bessel_j_ratio(p, lo) - f.ratio));
    }
  }
  // (j_k, j_{k+1}) and (j_last, mu_max]: the ratio runs from -inf upward.
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    const double lo = zeros[k];
    const double hi = k + 1 < zeros.size() ? zeros[k + 1] : mu_max;
    const double g_lo = f.condition(lo);
    const double g_hi = f.condition(hi);
    if (k + 1 == zeros.size() && ((g_lo < 0.0) == (g_hi < 0.0) || g_hi == 0.0)) {
      if (g_hi == 0.0) set.roots.push_back(hi);
      continue;
    }
    set.roots.push_back(bracketed_newton([&f](double mu) { return condition_and_slope(f, mu); },
                                         lo, hi, g_lo));
  }

  if (audit) {
    const std::size_t expected = audit_count(f, mu_max, first_zero);
    if (expected != set.roots.size())
      throw RootCountMismatch("find_roots: scan found " + std::to_string(set.roots.size()) +
                              " roots, sign-change audit " + std::to_string(expected) +
                              " (n = " + std::to_string(f.n) + ")");
  }
  return set;
}

}  // namespace detail

/// All roots of the family's Bessel condition in (0, mu_max], audited
/// against a sign-change count on a 0.05 grid.
inline RootSet find_roots(const EigenvalueFamily& family, double mu_max) {
  if (!(mu_max > 0.0) || !std::isfinite(mu_max)) throw DomainError("find_roots: mu_max must be > 0");
  return detail::find_roots_with_zeros(family, mu_max, bessel_zeros(family.p, mu_max), true);
}

/// Lower bound for every eigenvalue with angular momentum n, any family:
/// the positive-ratio first root obeys J_{p+1}/J_p <= y/(2(1-y^2)) with
/// y = mu/(p+1), and all other roots lie above the first zero of J_p > p.
inline double eigenvalue_lower_bound(int n, int m, double theta) {
  const int p = n + m / 2 - 1;
  const double rho = std::exp(-std::abs(theta));
  const double y = (-1.0 + std::sqrt(1.0 + 16.0 * rho * rho)) / (4.0 * rho);
  return std::min(static_cast<double>(p), (p + 1) * y);
}

struct BallSpectrum {
  double theta = 0.0;
  int m = 2;
  double mu_max = 0.0;
  int n_max = 0;
  std::vector<RootSet> root_sets;  // four per n, n = 0..n_max
};

struct SpectrumOptions {
  std::optional<int> n_max;  // default: every n whose roots can reach mu_max
  bool audit = true;
};

inline BallSpectrum compute_ball_spectrum(double theta, int m, double mu_max,
                                          const SpectrumOptions& opts = {}) {
  check_even_dimension(m, "compute_ball_spectrum");
  if (!(mu_max > 0.0) || !std::isfinite(mu_max))
    throw DomainError("compute_ball_spectrum: mu_max must be > 0");
  BallSpectrum spec{theta, m, mu_max, 0, {}};
  int n_max = 0;
  if (opts.n_max) {
    if (*opts.n_max < 0) throw DomainError("compute_ball_spectrum: n_max must be >= 0");
    n_max = *opts.n_max;
  } else {
    while (eigenvalue_lower_bound(n_max + 1, m, theta) <= mu_max) ++n_max;
  }
  spec.n_max = n_max;
  for (int n = 0; n <= n_max; ++n) {
    const int p = n + m / 2 - 1;
    const auto zeros = bessel_zeros(p, mu_max);
    for (const auto& f : all_families(n, m, theta))
      spec.root_sets.push_back(detail::find_roots_with_zeros(f, mu_max, zeros, opts.audit));
  }
  return spec;
}

struct HeatTraceSample {
  double t = 0.0;
  double value = 0.0;
  double truncation_bound = 0.0;
};

namespace detail {

// Bound on sum_{mu >= lower} e^{-t mu^2} over one family: zeros of J_p are
// more than 3 apart, so any window of length 3 holds at most two roots.
inline double family_tail_bound(double t, double lower) {
  return 2.0 * std::exp(-t * lower * lower) / -std::expm1(-6.0 * t * lower);
}

}  // namespace detail

inline double truncation_bound(const BallSpectrum& spec, double t) {
  CompensatedSum bound;
  for (int n = 0; n <= spec.n_max; ++n)
    bound += 4.0 * static_cast<double>(degeneracy(n, spec.m)) *
             detail::family_tail_bound(t, spec.mu_max);
  for (int n = spec.n_max + 1;; ++n) {
    const double lower = std::max(eigenvalue_lower_bound(n, spec.m, spec.theta), 1e-3);
    const double term = 4.0 * static_cast<double>(degeneracy(n, spec.m)) *
                        detail::family_tail_bound(t, lower);
    bound += term;
    if (lower > spec.mu_max && term < 1e-18 * std::max(bound.value(), 1e-300)) break;
    if (n > spec.n_max + 100000) return std::numeric_limits<double>::infinity();
  }
  return bound.value();
}

/// Truncated sum over all four families of d_n(m) e^{-t mu^2}, accumulated in
/// ascending mu.
inline HeatTraceSample heat_trace(const BallSpectrum& spec, double t) {
  if (!(t > 0.0)) throw DomainError("heat_trace: t must be > 0");
  std::vector<std::pair<double, double>> terms;  // (mu, weight)
  for (const auto& set : spec.root_sets) {
    const double w = static_cast<double>(degeneracy(set.family.n, spec.m));
    for (double mu : set.roots) terms.emplace_back(mu, w);
  }
  std::sort(terms.begin(), terms.end());
  CompensatedSum sum;
  for (const auto& [mu, w] : terms) sum += w * std::exp(-t * mu * mu);
  HeatTraceSample s{t, sum.value(), truncation_bound(spec, t)};
  if (!(s.truncation_bound < 1e-10 * s.value))
    throw InsufficientCutoff("heat_trace: truncation not below 1e-10 of the trace", s.truncation_bound);
  return s;
}

inline HeatTraceSample heat_trace(double theta, int m, double t, double mu_max,
                                  std::optional<int> n_max = std::nullopt) {
  return heat_trace(compute_ball_spectrum(theta, m, mu_max, {n_max, true}), t);
}

/// n_samples geometric points on [t_min, t_max].
inline std::vector<double> geometric_grid(double t_min, double t_max, int n_samples) {
  if (!(t_min > 0.0) || !(t_max > t_min) || n_samples < 2)
    throw DomainError("geometric_grid: need 0 < t_min < t_max and at least 2 points");
  std::vector<double> ts;
  const double ratio = std::log(t_max / t_min) / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i) ts.push_back(i + 1 == n_samples ? t_max : t_min * std::exp(i * ratio));
  return ts;
}

struct AsymptoticFit {
  std::vector<double> coeffs;  // a_0 .. a_K, a_0 pinned
  double residual = 0.0;       // RMS sample residual
  double condition_estimate = 0.0;
  std::vector<double> spread;  // |a_j(K) - a_j(K+1)|, j = 0..K (spread[0] = 0)
};

inline constexpr double kMaxCondition = 1e10;

namespace detail {

struct LinearFit {
  Eigen::VectorXd coeffs;
  double rms = 0.0;
  double condition = 0.0;
};

inline LinearFit fit_free_coefficients(const std::vector<HeatTraceSample>& samples, int m, int K,
                                       double a0) {
  const auto rows = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd A(rows, K);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = samples[static_cast<std::size_t>(i)].t;
    y(i) = samples[static_cast<std::size_t>(i)].value - a0 * std::pow(t, -0.5 * m);
    for (int n = 1; n <= K; ++n) A(i, n - 1) = std::pow(t, 0.5 * (n - m));
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  LinearFit fit;
  fit.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                          : std::numeric_limits<double>::infinity();
  fit.coeffs = A.colPivHouseholderQr().solve(y);
  fit.rms = std::sqrt((A * fit.coeffs - y).squaredNorm() / static_cast<double>(rows));
  return fit;
}

}  // namespace detail

/// Least-squares fit of sum_n a_n t^{(n-m)/2}, n = 0..K, with a_0 pinned to
/// the flat interior value. The spread is the change of each coefficient
/// when one more nuisance term is added.
inline AsymptoticFit fit_heat_coefficients(const std::vector<HeatTraceSample>& samples, int m,
                                           int K = 5) {
  check_even_dimension(m, "fit_heat_coefficients");
  if (K < 1) throw DomainError("fit_heat_coefficients: K must be >= 1");
  if (samples.size() < static_cast<std::size_t>(K) + 3)
    throw DomainError("fit_heat_coefficients: need at least K+3 samples");
  const double a0 = ball_a0(m);
  const auto fit = detail::fit_free_coefficients(samples, m, K, a0);
  if (fit.condition > kMaxCondition)
    throw IllConditioned("fit_heat_coefficients: condition estimate " + std::to_string(fit.condition));

  AsymptoticFit out;
  out.coeffs.push_back(a0);
  for (int j = 0; j < K; ++j) out.coeffs.push_back(fit.coeffs(j));
  out.residual = fit.rms;
  out.condition_estimate = fit.condition;
  out.spread.assign(static_cast<std::size_t>(K) + 1, 0.0);
  if (samples.size() >= static_cast<std::size_t>(K) + 4) {
    const auto wider = detail::fit_free_coefficients(samples, m, K + 1, a0);
    for (int j = 0; j < K; ++j)
      out.spread[static_cast<std::size_t>(j) + 1] = std::abs(wider.coeffs(j) - fit.coeffs(j));
  }
  return out;
}

struct ModeIntegralResiduals {
  double norm_residual = 0.0;
  double gamma5_residual = 0.0;
};

struct ModeIntegralClosedForms {
  double inv_c2 = 0.0;     // 1/C^2 from the four-term Bessel expression
  double c2 = 0.0;         // C^2 from the on-shell simplification
  double gamma5 = 0.0;     // <phi | gamma_tilde phi>
};

inline constexpr double kOnShellTol = 1e-9;

/// On-shell closed forms for the normalisation and chirality expectation.
inline ModeIntegralClosedForms mode_closed_forms(const EigenvalueFamily& f, double mu) {
  const auto seq = specialfn::bessel_j_sequence(f.p + 2, mu);
  const double jp = seq[static_cast<std::size_t>(f.p)];
  const double jp1 = seq[static_cast<std::size_t>(f.p) + 1];
  const double jp2 = seq[static_cast<std::size_t>(f.p) + 2];
  const double jm1 = f.p == 0 ? -seq[1] : seq[static_cast<std::size_t>(f.p) - 1];

  const bool plus = f.chirality == Chirality::plus_branch;
  const bool pos = f.sign == EigenSign::pos;
  const double e = std::exp(plus ? f.theta : -f.theta);
  // The (2p+1) e term is subtracted when r = +e and added when r = -e.
  const double s = f.ratio > 0.0 ? -1.0 : 1.0;
  const double ch = std::cosh(f.theta);
  const double q = (f.p + 0.5) / ch;

  ModeIntegralClosedForms c;
  c.inv_c2 = 0.5 * (jp * jp + jp1 * jp1 - jm1 * jp1 - jp * jp2);
  c.c2 = mu / (jp * jp) / (mu + mu * e * e + s * (2.0 * f.p + 1.0) * e);
  c.gamma5 = (pos ? -1.0 : 1.0) / (2.0 * ch) / (mu + s * q);
  return c;
}

/// Quadrature of the radial mode integrals against their closed forms.
inline ModeIntegralResiduals verify_mode_integrals(const EigenvalueFamily& f, double mu) {
  if (!(mu > 0.0)) throw DomainError("verify_mode_integrals: mu must be > 0");
  const double g = f.condition(mu);
  if (std::abs(g) > kOnShellTol)
    throw DomainError("verify_mode_integrals: mu is off-shell (condition residual " +
                      std::to_string(std::abs(g)) + ")");
  const auto closed = mode_closed_forms(f, mu);

  quadrature::Options opts;
  opts.abs_tol = 1e-15;
  opts.rel_tol = 1e-14;
  const int p = f.p;
  using Vec2 = Eigen::Vector2d;
  const auto integral = quadrature::integrate(
      [p, mu](double r) -> Vec2 {
        const auto j = specialfn::bessel_j_pair(p, mu * r);
        return Vec2(r * (j.j_p1 * j.j_p1 + j.j_p * j.j_p), r * (j.j_p1 * j.j_p1 - j.j_p * j.j_p));
      },
      0.0, 1.0, opts);

  ModeIntegralResiduals res;
  res.norm_residual = std::max(std::abs(integral.value(0) - closed.inv_c2),
                               std::abs(integral.value(0) - 1.0 / closed.c2));
  const double gamma5 = f.orientation() * closed.c2 * integral.value(1);
  res.gamma5_residual = std::abs(gamma5 - closed.gamma5);
  return res;
}

}  // namespace chibag

#endif  // CHIBAG_BALL_SPECTRUM_HPP
