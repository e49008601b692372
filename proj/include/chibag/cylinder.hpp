#ifndef CHIBAG_CYLINDER_HPP
#define CHIBAG_CYLINDER_HPP

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "chibag/clifford.hpp"
#include "chibag/errors.hpp"
#include "chibag/quadrature.hpp"
#include "chibag/specialfn.hpp"

namespace chibag {

/// One eigenmode of the boundary operator B on the product cylinder
/// [0, inf) x N: B -> omega, and the heat kernel factorises into the mode
/// projector times a d_s x d_s matrix in (x_m, x_m').
struct ModeParams {
  double omega = 0.0;
  double theta = 0.0;
  double t = 1.0;
  std::shared_ptr<const GammaRep> rep;

  static ModeParams make(double omega, double theta, double t, int m) {
    return make(omega, theta, t, std::make_shared<const GammaRep>(build_gamma(m)));
  }
  static ModeParams make(double omega, double theta, double t, std::shared_ptr<const GammaRep> rep) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("ModeParams: t must be > 0");
    if (!std::isfinite(omega) || !std::isfinite(theta))
      throw DomainError("ModeParams: omega and theta must be finite");
    if (!rep) throw DomainError("ModeParams: missing gamma representation");
    return {omega, theta, t, std::move(rep)};
  }

  /// omega tanh(theta)
  double kappa() const { return omega * std::tanh(theta); }
};

/// Free, image and boundary parts of the per-mode kernel. The free part is
/// the kernel of the full line and drops out of boundary contributions.
struct KernelParts {
  Matrix free;
  Matrix image;
  Matrix boundary;

  Matrix total() const { return free + image + boundary; }
};

/// Per-mode heat kernel factor, without the e^{-omega^2 t}/sqrt(4 pi t) weight:
///   e^{-xi^2/4t} - e^{-eta^2/4t}
///   + 2 Pi_+ Pi_+^dag / cosh^2 [1 + sqrt(pi t) kappa e^{u^2} erfc(u)] e^{-eta^2/4t}
/// with xi = x - x', eta = x + x', u = eta/sqrt(4t) - sqrt(t) kappa.
class ModeKernel {
 public:
  explicit ModeKernel(ModeParams params)
      : params_(std::move(params)),
        pp_(pi_plus_product(*params_.rep, params_.theta)),
        boundary_weight_(2.0 / (std::cosh(params_.theta) * std::cosh(params_.theta))) {}

  const ModeParams& params() const { return params_; }
  /// Pi_+ Pi_+^dagger
  const Matrix& pp() const { return pp_; }

  /// Scalar factors of the free, image and boundary parts; the free and
  /// image parts multiply the identity, the boundary part multiplies pp().
  Eigen::Vector3d scalars(double x, double xp) const {
    const double t = params_.t;
    const double xi = x - xp;
    const double eta = x + xp;
    const double g = std::exp(-eta * eta / (4.0 * t));
    return {std::exp(-xi * xi / (4.0 * t)), -g, boundary_weight_ * boundary_scalar(eta)};
  }

  /// d/dx of scalars(), x being the first argument.
  Eigen::Vector3d slopes(double x, double xp) const {
    const double t = params_.t;
    const double k = params_.kappa();
    const double xi = x - xp;
    const double eta = x + xp;
    const double g = std::exp(-eta * eta / (4.0 * t));
    const double scaled = std::sqrt(std::numbers::pi * t) * g * specialfn::erfcx(u(eta));
    const double d_bracket = -eta / (2.0 * t) * g - k * k * scaled - k * g;
    return {-xi / (2.0 * t) * std::exp(-xi * xi / (4.0 * t)), eta / (2.0 * t) * g, boundary_weight_ * d_bracket};
  }

  KernelParts operator()(double x, double xp) const { return assemble(scalars(x, xp)); }

  KernelParts derivative(double x, double xp) const { return assemble(slopes(x, xp)); }

  /// Full kernel including the mode weight e^{-omega^2 t}/sqrt(4 pi t), at time t.
  Matrix weighted(double x, double xp, double t) const {
    ModeKernel shifted(ModeParams{params_.omega, params_.theta, t, params_.rep});
    return std::exp(-params_.omega * params_.omega * t) / std::sqrt(4.0 * std::numbers::pi * t) *
           shifted(x, xp).total();
  }

  double u(double eta) const { return eta / std::sqrt(4.0 * params_.t) - std::sqrt(params_.t) * params_.kappa(); }

 private:
  KernelParts assemble(const Eigen::Vector3d& c) const {
    const Matrix id = params_.rep->identity();
    return {c(0) * id, c(1) * id, c(2) * pp_};
  }

  // [1 + sqrt(pi t) kappa e^{u^2} erfc(u)] e^{-eta^2/4t}
  double boundary_scalar(double eta) const {
    const double t = params_.t;
    const double g = std::exp(-eta * eta / (4.0 * t));
    return g + std::sqrt(std::numbers::pi * t) * params_.kappa() * g * specialfn::erfcx(u(eta));
  }

  ModeParams params_;
  Matrix pp_;
  double boundary_weight_;
};

inline ModeKernel mode_kernel(const ModeParams& params) { return ModeKernel(params); }

inline constexpr double kDerivativeAuditTol = 1e-7;

/// Largest scaled mismatch between the analytic x-derivative and central
/// differences with step h.
inline double derivative_audit(const ModeKernel& k, double x, double xp, double h = 1e-5) {
  const auto analytic = k.derivative(x, xp);
  const auto plus = k(x + h, xp);
  const auto minus = k(x - h, xp);
  double worst = 0.0;
  auto track = [&worst, h](const Matrix& a, const Matrix& p, const Matrix& mi) {
    const Matrix fd = (p - mi) / (2.0 * h);
    const double scale = std::max(1.0, detail::max_entry(a));
    worst = std::max(worst, detail::max_entry(a - fd) / scale);
  };
  track(analytic.free, plus.free, minus.free);
  track(analytic.image, plus.image, minus.image);
  track(analytic.boundary, plus.boundary, minus.boundary);
  return worst;
}

/// The per-mode Dirac operator gamma_m gamma_tilde omega + gamma_m d/dx applied
/// to the kernel in its first argument.
class DiracKernel {
 public:
  explicit DiracKernel(ModeKernel kernel)
      : kernel_(std::move(kernel)),
        gm_(kernel_.params().rep->gamma_normal()),
        gmgt_(gm_ * kernel_.params().rep->gamma_tilde) {}

  const ModeKernel& kernel() const { return kernel_; }

  KernelParts operator()(double x, double xp) const {
    const double w = kernel_.params().omega;
    const auto k = kernel_(x, xp);
    const auto d = kernel_.derivative(x, xp);
    return {w * gmgt_ * k.free + gm_ * d.free, w * gmgt_ * k.image + gm_ * d.image,
            w * gmgt_ * k.boundary + gm_ * d.boundary};
  }

  /// Part `part` (0 free, 1 image, 2 boundary) of the result as
  /// c(0) gamma_m gamma_tilde X + c(1) gamma_m X, with X the identity or pp().
  Eigen::Vector2d coefficients(double x, double xp, int part) const {
    const double w = kernel_.params().omega;
    return {w * kernel_.scalars(x, xp)(part), kernel_.slopes(x, xp)(part)};
  }

  const Matrix& gamma_normal() const { return gm_; }
  const Matrix& gamma_normal_tilde() const { return gmgt_; }

 private:
  ModeKernel kernel_;
  Matrix gm_;
  Matrix gmgt_;
};

/// Apply the Dirac operator after auditing the analytic derivative against
/// finite differences at a few points on the scale sqrt(t).
inline DiracKernel apply_dirac(const ModeKernel& kernel) {
  const double s = std::sqrt(kernel.params().t);
  for (double x : {0.3 * s, 1.0 * s, 2.0 * s}) {
    const double r = derivative_audit(kernel, x, 0.5 * s);
    if (r > kDerivativeAuditTol) throw ConsistencyError("apply_dirac: derivative mismatch", r);
  }
  return DiracKernel(kernel);
}

/// Pi_- K(0, x') and Pi_- (P K)(0, x'): both vanish for the bag condition.
inline double boundary_condition_residual(const ModeKernel& k, double xp) {
  const auto proj = chiral_projectors(*k.params().rep, k.params().theta);
  const double r1 = detail::max_entry(proj.pi_minus * k(0.0, xp).total());
  const double r2 = detail::max_entry(proj.pi_minus * DiracKernel(k)(0.0, xp).total());
  return std::max(r1, r2);
}

/// (d_t + omega^2 - d_x^2) of the weighted kernel by fourth-order central
/// differences with steps relative to t and sqrt(t).
inline double heat_equation_residual(const ModeKernel& k, double x, double xp) {
  const double t = k.params().t;
  const double w = k.params().omega;
  const double ht = 1e-3 * t;
  const double hx = 1e-3 * std::sqrt(t);
  auto at_t = [&](double dt) { return k.weighted(x, xp, t + dt); };
  auto at_x = [&](double dx) { return k.weighted(x + dx, xp, t); };
  const Matrix d_t = (-at_t(2 * ht) + 8.0 * at_t(ht) - 8.0 * at_t(-ht) + at_t(-2 * ht)) / (12.0 * ht);
  const Matrix d_xx = (-at_x(2 * hx) + 16.0 * at_x(hx) - 30.0 * at_x(0.0) + 16.0 * at_x(-hx) -
                       at_x(-2 * hx)) / (12.0 * hx * hx);
  return detail::max_entry(d_t + w * w * at_x(0.0) - d_xx);
}

/// Residual of
///   -1/2 d/dx [e^{-x^2/t + u^2} erfc(u)] = e^{-x^2/t} [1/sqrt(pi t) + kappa e^{u^2} erfc(u)],
/// u = u(2x), left side by central differences, relative to the right side.
inline double erfc_derivative_residual(double omega, double theta, double t, double x, double h = 1e-5) {
  const double k = omega * std::tanh(theta);
  auto u = [t, k](double y) { return 2.0 * y / std::sqrt(4.0 * t) - std::sqrt(t) * k; };
  auto h_of = [t, &u](double y) { return std::exp(-y * y / t) * specialfn::erfcx(u(y)); };
  const double lhs = -0.5 * (h_of(x + h) - h_of(x - h)) / (2.0 * h);
  const double rhs =
      std::exp(-x * x / t) * (1.0 / std::sqrt(std::numbers::pi * t) + k * specialfn::erfcx(u(x)));
  return std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs));
}

/// How e^{t kappa^2} erfc(-sqrt(t) kappa) is evaluated.
enum class ErfRoute { erfc, one_plus_erf };

struct IntegralCheck {
  double residual = 0.0;
  double tail_bound = 0.0;
  Matrix lhs;
  Matrix rhs;
};

inline constexpr double kTailTol = 1e-12;

namespace detail {

// Upper limit for x-integrals of Gaussian-dominated integrands.
inline double cylinder_upper(const ModeParams& p) { return 12.0 * std::sqrt(p.t) + 2.0 * std::abs(p.omega) * p.t; }

// int_X^inf (A + B x) e^{-x^2/t} dx
inline double gaussian_tail(double a, double b, double x, double t) {
  const double g = std::exp(-x * x / t);
  return a * t / (2.0 * x) * g + b * t / 2.0 * g;
}

inline double frobenius(const Matrix& m) { return m.norm(); }

// Integrates f times part `part` of the Dirac-applied kernel on the diagonal.
// The part is a fixed matrix combination with scalar coefficients, so the
// coefficients are integrated and the matrix assembled afterwards.
inline IntegralCheck integrate_part(const ModeParams& params, const Matrix& f, int part, const Matrix& rhs,
                                    double tail_a, double tail_b) {
  const DiracKernel dirac = apply_dirac(ModeKernel(params));
  const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * params.t);
  const double upper = cylinder_upper(params);
  quadrature::Options opts;
  opts.abs_tol = 1e-15;
  opts.rel_tol = 1e-14;
  const auto result = quadrature::integrate(
      [&](double x) -> Eigen::Vector2d { return dirac.coefficients(x, x, part); }, 0.0, upper, opts);
  const Matrix x_mat = part == 2 ? dirac.kernel().pp() : params.rep->identity();
  IntegralCheck c;
  c.lhs = norm * f * (result.value(0) * dirac.gamma_normal_tilde() + result.value(1) * dirac.gamma_normal()) * x_mat;
  c.rhs = rhs;
  c.tail_bound = norm * frobenius(f) * gaussian_tail(tail_a, tail_b, upper, params.t);
  if (c.tail_bound > kTailTol)
    throw ConsistencyError("cylinder integral: Gaussian tail bound exceeded", c.tail_bound);
  c.residual = max_entry(c.lhs - c.rhs);
  return c;
}

}  // namespace detail

inline void check_f_matrix(const ModeParams& params, const Matrix& f) {
  if (f.rows() != params.rep->d_s || f.cols() != params.rep->d_s)
    throw DomainError("cylinder: f must be a d_s x d_s matrix");
}

/// Image-part integral:
///   int_0^inf dx f [P U_1]_{x=x'} = f gamma_m / (2 sqrt(4 pi t)) - f gamma_m gamma_tilde omega / 4.
inline IntegralCheck check_U1_integral(const ModeParams& params, const Matrix& f) {
  check_f_matrix(params, f);
  const auto& rep = *params.rep;
  const double t = params.t;
  const Matrix rhs = 0.5 / std::sqrt(4.0 * std::numbers::pi * t) * f * rep.gamma_normal() -
                     0.25 * params.omega * f * rep.gamma_normal() * rep.gamma_tilde;
  // |P U_1| <= (|omega| + x/t) e^{-x^2/t}
  return detail::integrate_part(
      params, f, 1, rhs, std::abs(params.omega), 1.0 / t);
}

/// Right side of the boundary-part integral, with E = e^{t kappa^2} erfc(-sqrt(t) kappa):
///   -f gamma_m PP [1/sqrt(pi t) + kappa E] / (2 cosh^2)
///   + omega f gamma_m gamma_tilde PP E / (2 cosh^2).
inline Matrix u2_rhs(const ModeParams& params, const Matrix& f, ErfRoute route = ErfRoute::erfc) {
  const auto& rep = *params.rep;
  const double t = params.t;
  const double k = params.kappa();
  const double ch = std::cosh(params.theta);
  const double arg = std::sqrt(t) * k;
  const double e = route == ErfRoute::erfc ? specialfn::erfcx(-arg)
                                           : std::exp(arg * arg) * (1.0 + specialfn::erf(arg));
  const Matrix pp = pi_plus_product(rep, params.theta);
  const double c = 1.0 / (2.0 * ch * ch);
  return -c * (1.0 / std::sqrt(std::numbers::pi * t) + k * e) * f * rep.gamma_normal() * pp +
         c * params.omega * e * f * rep.gamma_normal() * rep.gamma_tilde * pp;
}

inline IntegralCheck check_U2_integral(const ModeParams& params, const Matrix& f,
                                       ErfRoute route = ErfRoute::erfc) {
  check_f_matrix(params, f);
  const double t = params.t;
  const double k = std::abs(params.kappa());
  const double w = std::abs(params.omega);
  const double ch = std::cosh(params.theta);
  const double pp_norm = pi_plus_product(*params.rep, params.theta).norm();
  // For x beyond the upper limit u > 0, so e^{u^2} erfc(u) <= 1.
  const double sp = std::sqrt(std::numbers::pi * t);
  const double a = 2.0 / (ch * ch) * pp_norm * (w * (1.0 + sp * k) + k * k * sp + k);
  const double b = 2.0 / (ch * ch) * pp_norm / t;
  return detail::integrate_part(
      params, f, 2, u2_rhs(params, f, route), a, b);
}

struct TIntegralCheck {
  double residual = 0.0;  // relative
  double numeric = 0.0;
  double closed_form = 0.0;
  double tail_bound = 0.0;
};

/// Closed form of int_0^inf t^{(s-1)/2} e^{-t omega^2/cosh^2} (1 + erf(sqrt(t) omega tanh)) dt.
inline double t_integral_closed_form(double s, double omega, double theta, const EvalConfig& cfg = {}) {
  if (!(s > -1.0)) throw DomainError("t_integral: requires s > -1");
  if (omega == 0.0) throw DomainError("t_integral: requires omega != 0");
  const double ch = std::cosh(theta);
  const double sh = std::sinh(theta);
  const double sgn = omega > 0.0 ? 1.0 : -1.0;
  return std::pow(ch / std::abs(omega), s + 1.0) *
         (specialfn::gamma_fn(0.5 * (s + 1.0)) +
          2.0 / std::sqrt(std::numbers::pi) * specialfn::gamma_fn(1.0 + 0.5 * s) * sh * sgn *
              specialfn::hyp2f1(0.5, 1.0 + 0.5 * s, 1.5, -sh * sh, cfg));
}

/// Quadrature in u = sqrt(t) on (0, U) plus an incomplete-gamma tail bound.
inline TIntegralCheck check_t_integral(double s, double omega, double theta, const EvalConfig& cfg = {}) {
  TIntegralCheck c;
  c.closed_form = t_integral_closed_form(s, omega, theta, cfg);
  const double ch = std::cosh(theta);
  const double a = omega * omega / (ch * ch);
  const double k = omega * std::tanh(theta);
  const double alpha = 0.5 * (s + 1.0);
  // a U^2 = X with X well past the peak of u^s e^{-a u^2}
  const double x_cut = std::max(80.0, 4.0 * alpha + 40.0);
  const double upper = std::sqrt(x_cut / a);
  quadrature::Options opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = std::max(cfg.quadrature_tol, 1e-14);
  opts.max_intervals = 20000;
  c.numeric = quadrature::integrate(
                  [s, a, k](double u) {
                    if (u == 0.0) return 0.0;
                    return 2.0 * std::pow(u, s) * std::exp(-a * u * u) * specialfn::erfc(-u * k);
                  },
                  0.0, upper, opts)
                  .value;
  // 1 + erf <= 2: tail <= 2 a^{-alpha} Gamma(alpha, X) and Gamma(alpha, X) <=
  // X^{alpha-1} e^{-X} / (1 - (alpha-1)/X) for X > alpha - 1.
  c.tail_bound = 2.0 * std::pow(a, -alpha) * std::pow(x_cut, alpha - 1.0) * std::exp(-x_cut) /
                 (1.0 - std::max(0.0, alpha - 1.0) / x_cut);
  if (c.tail_bound > 1e-12 * std::abs(c.closed_form))
    throw ConsistencyError("check_t_integral: tail bound exceeded", c.tail_bound);
  c.residual = std::abs(c.numeric - c.closed_form) / std::abs(c.closed_form);
  return c;
}

}  // namespace chibag

#endif  // CHIBAG_CYLINDER_HPP
