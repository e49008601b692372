#ifndef CHIBAG_COEFFICIENTS_HPP
#define CHIBAG_COEFFICIENTS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chibag/config.hpp"
#include "chibag/errors.hpp"
#include "chibag/specialfn.hpp"

namespace chibag {

inline void check_even_dimension(int m, const char* where) {
  if (m < 2 || m % 2 != 0)
    throw DomainError(std::string(where) + ": m must be an even integer >= 2, got " +
                      std::to_string(m));
}

/// Boundary constants of the a_1 / a_2 heat coefficients for chiral bag
/// conditions. Each slot multiplies one boundary invariant:
struct UniversalConstants {
  double theta = 0.0;
  int m = 0;
  double c1 = 0.0;  ///< f                        (a_1)
  double c2 = 0.0;  ///< L_aa f                   (a_2)
  double c3 = 0.0;  ///< f psi gamma_tilde gamma_m (a_2)
  double c4 = 0.0;  ///< f psi gamma_m            (a_2), identically zero
  double c5 = 0.0;  ///< f psi gamma_tilde        (a_2)
  double c6 = 0.0;  ///< f psi                    (a_2)
  double c7 = 0.0;  ///< f_{;m}                   (a_2)
};

/// Which calculation an EtaConstants record comes from. The ball does not
/// determine d4.
enum class EtaSource { ball_form, cylinder_form };

inline const char* to_string(EtaSource s) {
  return s == EtaSource::ball_form ? "ball_form" : "cylinder_form";
}

/// Constants of a_1^eta = tr(d1 f + d2 f gamma_tilde + d3 f gamma_m + d4 f gamma_tilde gamma_m).
class EtaConstants {
 public:
  EtaConstants(double theta, int m, EtaSource source, double d1, double d2, double d3, double d4)
      : theta_(theta), m_(m), source_(source), d1_(d1), d2_(d2), d3_(d3), d4_(d4) {}

  double theta() const { return theta_; }
  int m() const { return m_; }
  EtaSource source() const { return source_; }
  double d1() const { return d1_; }
  double d2() const { return d2_; }
  double d3() const { return d3_; }
  double d4() const {
    if (source_ == EtaSource::ball_form)
      throw DomainError("eta_constants: d4 is not available from the ball calculation");
    return d4_;
  }
  bool has_d4() const { return source_ == EtaSource::cylinder_form; }

 private:
  double theta_;
  int m_;
  EtaSource source_;
  double d1_, d2_, d3_, d4_;
};

namespace detail {

inline double hyp_tanh(double theta, int m, const EvalConfig& cfg) {
  // 2F1(1, (m-1)/2; 3/2; tanh^2)
  const double th = std::tanh(theta);
  return specialfn::hyp2f1(1.0, 0.5 * (m - 1), 1.5, th * th, cfg);
}

inline double hyp_half(double theta, int m, const EvalConfig& cfg) {
  // 2F1(1, 1 - m/2; 1/2; -sinh^2)
  const double sh = std::sinh(theta);
  return specialfn::hyp2f1(1.0, 1.0 - 0.5 * m, 0.5, -sh * sh, cfg);
}

inline double hyp_three_halves(double theta, int m, const EvalConfig& cfg) {
  // 2F1(1, 1 - m/2; 3/2; -sinh^2)
  const double sh = std::sinh(theta);
  return specialfn::hyp2f1(1.0, 1.0 - 0.5 * m, 1.5, -sh * sh, cfg);
}

inline double hyp_cylinder(double theta, int m, const EvalConfig& cfg) {
  // 2F1(1/2, (m+1)/2; 3/2; -sinh^2)
  const double sh = std::sinh(theta);
  return specialfn::hyp2f1(0.5, 0.5 * (m + 1), 1.5, -sh * sh, cfg);
}

// 2^m Gamma(m/2)
inline double ball_denominator(int m) { return std::ldexp(specialfn::gamma_fn(0.5 * m), m); }

inline double spinor_dimension(int m) { return std::ldexp(1.0, m / 2); }

inline double sphere_volume(int m) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / specialfn::gamma_fn(0.5 * m);
}

inline void require_close(double lhs, double rhs, double tol, const char* what) {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  const double residual = std::abs(lhs - rhs) / scale;
  if (residual > tol) throw ConsistencyError(what, residual);
}

}  // namespace detail

inline EtaConstants eta_constants(double theta, int m, EtaSource source,
                                  const EvalConfig& cfg = {}) {
  check_even_dimension(m, "eta_constants");
  const double sh = std::sinh(theta);
  const double ch = std::cosh(theta);
  if (source == EtaSource::ball_form) {
    const double d1 = -0.5 * (m - 1) * sh * detail::hyp_three_halves(theta, m, cfg);
    const double d2 = -0.5 * ch * detail::hyp_half(theta, m, cfg);
    return {theta, m, source, d1, d2, 0.0, 0.0};
  }
  const double f = detail::hyp_cylinder(theta, m, cfg);
  const double chm2 = std::pow(ch, m - 2);
  const double d1 = -0.5 * (m - 1) * sh * chm2 * ch * f;
  const double d2 = -0.5 / ch - 0.5 * (m - 1) * sh * sh * chm2 * f;
  const double d4 = -0.5 * std::tanh(theta) + 0.5 * (m - 1) * sh * chm2 * f;
  return {theta, m, source, d1, d2, 0.0, d4};
}

/// c2 and c7 share the hypergeometric 2F1(1, (m-1)/2; 3/2; tanh^2 theta).
inline UniversalConstants universal_constants(double theta, int m, const EvalConfig& cfg = {}) {
  check_even_dimension(m, "universal_constants");
  const double sh = std::sinh(theta);
  const double ch = std::cosh(theta);
  const double ft = detail::hyp_tanh(theta, m, cfg);
  UniversalConstants c;
  c.theta = theta;
  c.m = m;
  c.c1 = 0.25 * (std::pow(ch, m - 1) - 1.0);
  c.c2 = ((2.0 * m - 5.0) / 3.0 + (2.0 - m) * ft) / (2.0 * (m - 1));
  c.c3 = -2.0 * eta_constants(theta, m, EtaSource::cylinder_form, cfg).d4();
  c.c4 = 0.0;
  c.c5 = ch * detail::hyp_half(theta, m, cfg);
  c.c6 = (m - 1) * sh * detail::hyp_three_halves(theta, m, cfg);
  c.c7 = -0.5 * (1.0 - ft);
  return c;
}

struct BallHeatCoefficients {
  double a1 = 0.0;
  double a2 = 0.0;
};

inline constexpr double kInternalTol = 1e-12;

/// Global (f = 1, psi = 0) a_1, a_2 on the unit m-ball, cross-checked
/// against the general form with vol(S^{m-1}) and L_aa = m - 1.
inline BallHeatCoefficients ball_heat_coefficients(double theta, int m,
                                                   const EvalConfig& cfg = {}) {
  check_even_dimension(m, "ball_heat_coefficients");
  const double ds = detail::spinor_dimension(m);
  const double den = detail::ball_denominator(m);
  BallHeatCoefficients a;
  a.a1 = std::sqrt(std::numbers::pi) * ds / den * (std::pow(std::cosh(theta), m - 1) - 1.0);
  a.a2 = ds / den * ((2.0 * m - 5.0) / 3.0 + (2.0 - m) * detail::hyp_tanh(theta, m, cfg));

  const auto c = universal_constants(theta, m, cfg);
  const double vol = detail::sphere_volume(m);
  const double general_a1 = std::pow(4.0 * std::numbers::pi, -0.5 * (m - 1)) * vol * ds * c.c1;
  const double general_a2 = std::pow(4.0 * std::numbers::pi, -0.5 * m) * vol * ds * c.c2 * (m - 1);
  detail::require_close(a.a1, general_a1, kInternalTol, "ball_heat_coefficients: a1 routes disagree");
  detail::require_close(a.a2, general_a2, kInternalTol, "ball_heat_coefficients: a2 routes disagree");
  return a;
}

/// Global a_1^eta on the unit m-ball.
inline double a1_eta_ball(double theta, int m, const EvalConfig& cfg = {}) {
  check_even_dimension(m, "a1_eta_ball");
  const double ds = detail::spinor_dimension(m);
  const double den = detail::ball_denominator(m);
  const double value =
      -std::sinh(theta) * ds * (m - 1) / den * detail::hyp_three_halves(theta, m, cfg);
  const double d1 = eta_constants(theta, m, EtaSource::ball_form, cfg).d1();
  const double general = std::pow(4.0 * std::numbers::pi, -0.5 * m) * detail::sphere_volume(m) * ds * d1;
  detail::require_close(value, general, kInternalTol, "a1_eta_ball: routes disagree");
  return value;
}

/// Flat-interior a_0 on the unit m-ball: (4 pi)^{-m/2} vol(B^m) d_s.
inline double ball_a0(int m) {
  check_even_dimension(m, "ball_a0");
  return detail::spinor_dimension(m) / (std::ldexp(1.0, m) * specialfn::gamma_fn(0.5 * m + 1.0));
}

}  // namespace chibag

#endif  // CHIBAG_COEFFICIENTS_HPP
