#ifndef CHIBAG_IDENTITIES_HPP
#define CHIBAG_IDENTITIES_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "chibag/coefficients.hpp"
#include "chibag/specialfn.hpp"

namespace chibag {

/// |lhs - rhs| / max(1, |lhs|, |rhs|): absolute for O(1) values, relative
/// for the large constants at |theta| ~ 2, m ~ 12.
inline double scaled_residual(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

/// Euler transformation 2F1(a,b;c;z) = (1-z)^{c-a-b} 2F1(c-a, c-b; c; z).
inline double euler_transformation_residual(double a, double b, double c, double z,
                                            const EvalConfig& cfg = {}) {
  const double lhs = specialfn::hyp2f1(a, b, c, z, cfg);
  const double rhs = std::pow(1.0 - z, c - a - b) * specialfn::hyp2f1(c - a, c - b, c, z, cfg);
  return scaled_residual(lhs, rhs);
}

/// c3 + 2 d4, c4 + 2 d3, c5 + 2 d2, c6 + 2 d1 with cylinder d's; largest residual.
inline double check_eta_relations(double theta, int m, const EvalConfig& cfg = {}) {
  const auto c = universal_constants(theta, m, cfg);
  const auto d = eta_constants(theta, m, EtaSource::cylinder_form, cfg);
  return std::max({scaled_residual(c.c3, -2.0 * d.d4()), scaled_residual(c.c4, -2.0 * d.d3()),
                   scaled_residual(c.c5, -2.0 * d.d2()), scaled_residual(c.c6, -2.0 * d.d1())});
}

/// d1 from the ball against d1 from the cylinder.
inline double check_ball_cylinder_d1(double theta, int m, const EvalConfig& cfg = {}) {
  return scaled_residual(eta_constants(theta, m, EtaSource::ball_form, cfg).d1(),
                         eta_constants(theta, m, EtaSource::cylinder_form, cfg).d1());
}

/// cosh^2 2F1(1, 1-m/2; 1/2; -sinh^2)
///   = 1 + (m-1) sinh^2 cosh^{m-1} 2F1(1/2, (m+1)/2; 3/2; -sinh^2),
/// together with d2 from the ball against d2 from the cylinder.
inline double check_ball_cylinder_d2(double theta, int m, const EvalConfig& cfg = {}) {
  check_even_dimension(m, "check_ball_cylinder_d2");
  const double sh = std::sinh(theta);
  const double ch = std::cosh(theta);
  const double lhs = ch * ch * specialfn::hyp2f1(1.0, 1.0 - 0.5 * m, 0.5, -sh * sh, cfg);
  const double rhs = 1.0 + (m - 1) * sh * sh * std::pow(ch, m - 1) *
                               specialfn::hyp2f1(0.5, 0.5 * (m + 1), 1.5, -sh * sh, cfg);
  const double d2 = scaled_residual(eta_constants(theta, m, EtaSource::ball_form, cfg).d2(),
                                    eta_constants(theta, m, EtaSource::cylinder_form, cfg).d2());
  return std::max(scaled_residual(lhs, rhs), d2);
}

/// c7 + (m-1)/(m-2) (c2 + 1/6), defined for m >= 4 only.
inline double check_c7_relation(double theta, int m, const EvalConfig& cfg = {}) {
  check_even_dimension(m, "check_c7_relation");
  if (m == 2) throw DomainError("check_c7_relation: the quotient form needs m >= 4");
  const auto c = universal_constants(theta, m, cfg);
  return scaled_residual(c.c7, -(m - 1.0) / (m - 2.0) * (c.c2 + 1.0 / 6.0));
}

/// c2 and c7 from the tanh^2 argument against the
/// cosh^2 2F1(1, 2-m/2; 3/2; -sinh^2) forms.
inline double check_alternative_forms(double theta, int m, const EvalConfig& cfg = {}) {
  const auto c = universal_constants(theta, m, cfg);
  const double sh = std::sinh(theta);
  const double ch = std::cosh(theta);
  const double g = ch * ch * specialfn::hyp2f1(1.0, 2.0 - 0.5 * m, 1.5, -sh * sh, cfg);
  const double c2 = ((2.0 * m - 5.0) / 3.0 + (2.0 - m) * g) / (2.0 * (m - 1));
  const double c7 = -0.5 * (1.0 - g);
  return std::max(scaled_residual(c.c2, c2), scaled_residual(c.c7, c7));
}

/// The terminating 2F1 of c5, c6 and the cylinder d's, evaluated as a finite
/// polynomial and as a Pfaff-transformed infinite series.
inline double check_terminating_paths(double theta, int m, const EvalConfig& cfg = {}) {
  check_even_dimension(m, "check_terminating_paths");
  const double z = -std::sinh(theta) * std::sinh(theta);
  struct Params {
    double a, b, c;
  };
  const Params cases[] = {
      {1.0, 1.0 - 0.5 * m, 0.5},          // c5, ball d2
      {1.0, 1.0 - 0.5 * m, 1.5},          // c6, ball d1
      {0.5, 0.5 * (m + 1), 1.5},          // cylinder d1, d2, d4
      {1.0, 2.0 - 0.5 * m, 1.5},          // alternative c2, c7
  };
  double worst = 0.0;
  for (const auto& p : cases) {
    const double direct = specialfn::hyp2f1(p.a, p.b, p.c, z, cfg, specialfn::Hyp2f1Route::automatic);
    const double series = specialfn::hyp2f1(p.a, p.b, p.c, z, cfg, specialfn::Hyp2f1Route::pfaff_series);
    worst = std::max(worst, scaled_residual(direct, series));
  }
  return worst;
}

struct IdentityResult {
  std::string name;
  double max_residual = 0.0;
  double worst_theta = 0.0;
  int worst_m = 0;
  int evaluations = 0;
};

/// Every identity over the (theta, m) grid; the c7 relation skips m = 2.
inline std::vector<IdentityResult> run_identity_suite(const std::vector<double>& thetas,
                                                      const std::vector<int>& ms,
                                                      const EvalConfig& cfg = {}) {
  using Check = double (*)(double, int, const EvalConfig&);
  struct Entry {
    const char* name;
    Check check;
    int min_m;
  };
  const Entry entries[] = {
      {"eta_relations", &check_eta_relations, 2},
      {"ball_cylinder_d1", &check_ball_cylinder_d1, 2},
      {"ball_cylinder_d2", &check_ball_cylinder_d2, 2},
      {"c7_relation", &check_c7_relation, 4},
      {"alternative_forms", &check_alternative_forms, 2},
      {"terminating_paths", &check_terminating_paths, 2},
  };
  std::vector<IdentityResult> out;
  for (const auto& e : entries) {
    IdentityResult r{e.name, 0.0, 0.0, 0, 0};
    for (int m : ms) {
      if (m < e.min_m) continue;
      for (double theta : thetas) {
        const double res = e.check(theta, m, cfg);
        ++r.evaluations;
        if (res > r.max_residual || r.evaluations == 1) {
          r.max_residual = std::max(r.max_residual, res);
          r.worst_theta = theta;
          r.worst_m = m;
        }
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace chibag

#endif  // CHIBAG_IDENTITIES_HPP
