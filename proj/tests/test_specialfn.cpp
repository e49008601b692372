#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "chibag/specialfn.hpp"
#include "oracles.hpp"
#include "random_grid.hpp"
#include "test_support.hpp"

namespace sf = chibag::specialfn;
using support::rel_err;
using support::uniform;

TEST(Gamma, ValuesAndPoles) {
  EXPECT_NEAR(sf::gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_LT(rel_err(sf::gamma_fn(-2.5), oracle::kGammaMinus2p5), 1e-14);
  EXPECT_LT(rel_err(sf::gamma_fn(7.3), oracle::kGamma7p3), 1e-14);
  EXPECT_DOUBLE_EQ(sf::gamma_fn(5.0), 24.0);
  for (double x : {0.0, -1.0, -2.0, -7.0}) EXPECT_THROW(sf::gamma_fn(x), chibag::PoleError);
}

TEST(Gamma, PochhammerMatchesGammaRatio) {
  for (int i = 0; i < 50; ++i) {
    const double a = uniform(0.1, 6.0);
    const int n = static_cast<int>(uniform(0.0, 8.0));
    EXPECT_LT(rel_err(sf::pochhammer(a, n), sf::gamma_fn(a + n) / sf::gamma_fn(a)), 1e-13);
  }
}

TEST(Erf, ValuesAndScaledComplement) {
  EXPECT_LT(rel_err(sf::erfc(1.0), oracle::kErfc1), 1e-15);
  EXPECT_NEAR(sf::erf(0.0), 0.0, 0.0);
  EXPECT_LT(rel_err(sf::erfcx(3.0), oracle::kErfcx3), 1e-14);
  EXPECT_LT(rel_err(sf::erfcx(30.0), oracle::kErfcx30), 1e-14);
  EXPECT_LT(rel_err(sf::erfcx(-2.0), oracle::kErfcxMinus2), 1e-14);
  // No overflow where exp(x^2) alone would overflow.
  EXPECT_TRUE(std::isfinite(sf::erfcx(1e5)));
  EXPECT_NEAR(sf::erfcx(1e5) * 1e5 * std::sqrt(std::numbers::pi), 1.0, 1e-9);
}

TEST(Erf, ScaledComplementContinuousAcrossBranchSwitch) {
  const double below = sf::erfcx(std::nextafter(25.0, 0.0));
  const double above = sf::erfcx(25.0);
  EXPECT_LT(rel_err(below, above), 1e-13);
}

TEST(Erf, ComplementIdentity) {
  for (int i = 0; i < 100; ++i) {
    const double x = uniform(-4.0, 4.0);
    EXPECT_NEAR(sf::erfc(-x), 1.0 + sf::erf(x), 1e-15);
  }
}

TEST(Bessel, FrozenOracles) {
  for (const auto& o : oracle::kBessel) {
    const double got = sf::bessel_j(o.order, o.x);
    EXPECT_LT(std::abs(got - o.value), 1e-13 * std::max(1.0, std::abs(o.value)) + 1e-12 * std::abs(o.value))
        << "J_" << o.order << "(" << o.x << ")";
    EXPECT_LT(rel_err(got, o.value), 1e-11) << "J_" << o.order << "(" << o.x << ")";
  }
}

TEST(Bessel, AgreesWithStandardLibrary) {
  for (int i = 0; i < 300; ++i) {
    const int p = static_cast<int>(uniform(0.0, 60.0));
    const double x = uniform(0.0, 120.0);
    EXPECT_NEAR(sf::bessel_j(p, x), std::cyl_bessel_j(static_cast<double>(p), x), 1e-12)
        << "p=" << p << " x=" << x;
  }
}

TEST(Bessel, RecursionResidual) {
  for (int i = 0; i < 500; ++i) {
    const int p = 1 + static_cast<int>(uniform(0.0, 50.0));
    const double x = uniform(0.05, 100.0);
    const auto seq = sf::bessel_j_sequence(p + 1, x);
    const auto k = static_cast<std::size_t>(p);
    EXPECT_LT(std::abs(seq[k + 1] - 2.0 * p / x * seq[k] + seq[k - 1]), 1e-10) << p << " " << x;
  }
}

TEST(Bessel, NeumannSumRule) {
  for (double x : {0.3, 7.0, 42.0, 99.0}) {
    const auto seq = sf::bessel_j_sequence(static_cast<int>(x) + 60, x);
    double sum = seq[0] * seq[0];
    for (std::size_t k = 1; k < seq.size(); ++k) sum += 2.0 * seq[k] * seq[k];
    EXPECT_NEAR(sum, 1.0, 1e-13) << x;
  }
}

TEST(Bessel, DerivativeAndReflection) {
  for (double x : {0.7, 3.3, 15.0}) {
    EXPECT_NEAR(sf::bessel_j_prime(0, x), -sf::bessel_j(1, x), 1e-15);
    const double h = 1e-5;
    const double fd = (sf::bessel_j(4, x + h) - sf::bessel_j(4, x - h)) / (2.0 * h);
    EXPECT_NEAR(sf::bessel_j_prime(4, x), fd, 1e-9);
  }
}

TEST(Bessel, RatioSurvivesUnderflow) {
  // J_200(1) ~ 1e-375 underflows, the ratio does not.
  const double r = sf::bessel_j_ratio(200, 1.0);
  EXPECT_NEAR(r, 1.0 / (2.0 * 201.0), 1e-6);
  for (int i = 0; i < 100; ++i) {
    const int p = static_cast<int>(uniform(0.0, 40.0));
    const double x = uniform(0.1, 60.0);
    const auto j = sf::bessel_j_pair(p, x);
    if (std::abs(j.j_p) < 1e-3) continue;
    EXPECT_LT(rel_err(sf::bessel_j_ratio(p, x), j.j_p1 / j.j_p), 1e-10);
  }
}

TEST(Bessel, SmallArgumentSeries) {
  EXPECT_DOUBLE_EQ(sf::bessel_j(0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(sf::bessel_j(3, 0.0), 0.0);
  EXPECT_LT(rel_err(sf::bessel_j(2, 1e-6), std::cyl_bessel_j(2.0, 1e-6)), 1e-14);
}

TEST(Bessel, DomainErrors) {
  EXPECT_THROW(sf::bessel_j(-1, 1.0), chibag::DomainError);
  EXPECT_THROW(sf::bessel_j(1, -1.0), chibag::DomainError);
  EXPECT_THROW(sf::bessel_j(1, std::nan("")), chibag::DomainError);
}

TEST(Hypergeometric, FrozenOracles) {
  for (const auto& o : oracle::kHyp2f1)
    EXPECT_LT(rel_err(sf::hyp2f1(o.a, o.b, o.c, o.z), o.value), 1e-13)
        << o.a << "," << o.b << "," << o.c << "," << o.z;
}

TEST(Hypergeometric, ClosedFormSpecialCases) {
  // 2F1(1, 1/2; 3/2; z^2) = artanh(z)/z
  for (double z : {0.1, 0.5, 0.9, 0.99})
    EXPECT_LT(rel_err(sf::hyp2f1(1.0, 0.5, 1.5, z * z), std::atanh(z) / z), 1e-13);
  // 2F1(1/2, 3/2; 3/2; -s^2) = 1/sqrt(1+s^2)
  for (double s : {0.3, 1.0, 3.0})
    EXPECT_LT(rel_err(sf::hyp2f1(0.5, 1.5, 1.5, -s * s), 1.0 / std::sqrt(1.0 + s * s)), 1e-14);
  EXPECT_DOUBLE_EQ(sf::hyp2f1(1.0, 0.0, 0.5, -7.0), 1.0);
}

TEST(Hypergeometric, GaussRecursionContiguousC) {
  // c F(a,b;c) - (c-b) F(a,b;c+1) - b F(a,b+1;c+1) = 0
  for (int i = 0; i < 300; ++i) {
    const double a = uniform(-3.0, 3.0), b = uniform(-3.0, 3.0), c = uniform(0.2, 4.0);
    const double z = uniform(0.0, 0.9);
    const double t0 = c * sf::hyp2f1(a, b, c, z);
    const double t1 = (c - b) * sf::hyp2f1(a, b, c + 1.0, z);
    const double t2 = b * sf::hyp2f1(a, b + 1.0, c + 1.0, z);
    EXPECT_LT(std::abs(t0 - t1 - t2) / std::max({1.0, std::abs(t0), std::abs(t1), std::abs(t2)}), 1e-10) << a << " " << b << " " << c << " " << z;
  }
}

TEST(Hypergeometric, GaussRecursionContiguousA) {
  // c F(a,b;c) - c F(a+1,b;c) + b z F(a+1,b+1;c+1) = 0
  for (int i = 0; i < 300; ++i) {
    const double a = uniform(-3.0, 3.0), b = uniform(-3.0, 3.0), c = uniform(0.2, 4.0);
    const double z = uniform(0.0, 0.9);
    const double t0 = c * sf::hyp2f1(a, b, c, z);
    const double t1 = c * sf::hyp2f1(a + 1.0, b, c, z);
    const double t2 = b * z * sf::hyp2f1(a + 1.0, b + 1.0, c + 1.0, z);
    EXPECT_LT(std::abs(t0 - t1 + t2) / std::max({1.0, std::abs(t0), std::abs(t1), std::abs(t2)}), 1e-10) << a << " " << b << " " << c << " " << z;
  }
}

TEST(Hypergeometric, EulerTransformation) {
  for (int i = 0; i < 300; ++i) {
    const double a = uniform(-2.0, 3.0), b = uniform(-2.0, 3.0), c = uniform(0.3, 4.0);
    const double z = uniform(-3.0, 0.9);
    const double lhs = sf::hyp2f1(a, b, c, z);
    const double rhs = std::pow(1.0 - z, c - a - b) * sf::hyp2f1(c - a, c - b, c, z);
    EXPECT_LT(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), 1e-10) << a << " " << b << " " << c << " " << z;
  }
}

TEST(Hypergeometric, TerminatingMatchesSeriesRoute) {
  for (int m = 2; m <= 12; m += 2) {
    for (double theta : {0.2, 0.9, 1.6}) {
      const double z = -std::sinh(theta) * std::sinh(theta);
      const double b = 1.0 - 0.5 * m;
      for (double c : {0.5, 1.5}) {
        const double poly = sf::hyp2f1(1.0, b, c, z);
        const double series = sf::hyp2f1(1.0, b, c, z, {}, sf::Hyp2f1Route::pfaff_series);
        EXPECT_LT(std::abs(poly - series) / std::max(1.0, std::abs(poly)), 1e-12) << m << " " << theta;
      }
    }
  }
}

TEST(Hypergeometric, DomainErrors) {
  EXPECT_THROW(sf::hyp2f1(1.0, 1.0, 0.0, 0.5), chibag::DomainError);
  EXPECT_THROW(sf::hyp2f1(1.0, 1.0, -2.0, 0.5), chibag::DomainError);
  EXPECT_THROW(sf::hyp2f1(1.0, 1.0, 1.5, 1.0), chibag::DomainError);
}

TEST(Hypergeometric, ConvergenceBudget) {
  chibag::EvalConfig cfg;
  cfg.max_terms = 10;
  EXPECT_THROW(sf::hyp2f1(1.0, 2.5, 1.5, 0.99, cfg), chibag::ConvergenceError);
}

TEST(Hurwitz, FrozenOracles) {
  for (const auto& o : oracle::kHurwitz)
    EXPECT_LT(rel_err(sf::hurwitz_zeta(o.s, o.a), o.value), 1e-11) << o.s << " " << o.a;
}

TEST(Hurwitz, ShiftRelation) {
  // zeta(s, a) - zeta(s, a + 1) = a^{-s}, including the continued region.
  for (int i = 0; i < 200; ++i) {
    const double s = uniform(-20.0, 20.0);
    if (std::abs(s - 1.0) < 1e-3) continue;
    const double a = uniform(0.1, 4.0);
    const double z0 = sf::hurwitz_zeta(s, a);
    const double z1 = sf::hurwitz_zeta(s, a + 1.0);
    const double scale = std::max({std::abs(z0), std::abs(z1), std::pow(a, -s)});
    EXPECT_LT(std::abs(z0 - z1 - std::pow(a, -s)) / scale, 1e-11) << s << " " << a;
  }
}

TEST(Hurwitz, BernoulliValuesAtNegativeIntegers) {
  // zeta(-n, a) = -B_{n+1}(a)/(n+1); B_2(a) = a^2 - a + 1/6.
  for (double a : {0.3, 1.0, 2.7}) EXPECT_NEAR(sf::hurwitz_zeta(-1.0, a), -(a * a - a + 1.0 / 6.0) / 2.0, 1e-14);
}

TEST(Hurwitz, Errors) {
  EXPECT_THROW(sf::hurwitz_zeta(1.0, 0.5), chibag::PoleError);
  EXPECT_THROW(sf::hurwitz_zeta(2.0, 0.0), chibag::DomainError);
  EXPECT_THROW(sf::hurwitz_zeta(2.0, -1.0), chibag::DomainError);
}

TEST(Barnes, FrozenOracles) {
  for (const auto& o : oracle::kBarnes)
    EXPECT_LT(rel_err(sf::barnes_zeta(o.s, o.a, o.m), o.value), 1e-11) << o.s << " " << o.a << " " << o.m;
}

TEST(Barnes, ReducesToHurwitzForDiscs) {
  EXPECT_DOUBLE_EQ(sf::barnes_zeta(2.5, 0.7, 2), sf::hurwitz_zeta(2.5, 0.7));
}

TEST(Barnes, CoefficientsReproduceBinomials) {
  for (int m = 2; m <= 12; m += 2) {
    const double a = 0.5 * m - 1.0;
    const auto e = sf::barnes_coefficients(a, m);
    for (int n = 0; n < 6; ++n) {
      double poly = 0.0;
      for (std::size_t j = e.size(); j-- > 0;) poly = poly * (n + a) + e[j];
      double binom = 1.0;
      for (int k = 1; k <= m - 2; ++k) binom *= static_cast<double>(n + k) / k;
      EXPECT_NEAR(poly, binom, 1e-9 * binom) << m << " " << n;
    }
  }
}

TEST(Barnes, AgreesWithBruteForceAtRegularPoints) {
  const struct {
    double s, a;
    int m;
  } cases[] = {{4.0, 1.0, 4}, {3.5, 0.5, 4}, {6.2, 2.0, 6}, {8.5, 1.5, 8}};
  for (const auto& c : cases) {
    const double brute = support::barnes_brute_force(c.s, c.a, c.m, 200000);
    EXPECT_LT(rel_err(sf::barnes_zeta(c.s, c.a, c.m), brute), 1e-8) << c.s << " " << c.m;
  }
}

TEST(Barnes, ResiduesAndPoles) {
  EXPECT_NEAR(sf::barnes_residue(3, 1.0, 4), 0.5, 1e-15);
  EXPECT_NEAR(sf::barnes_residue(5, 0.7, 6), 1.0 / 24.0, 1e-15);
  EXPECT_NEAR(sf::barnes_residue(3, 1.0, 4), support::barnes_residue_oracle(3, 1.0, 4), 1e-8);
  EXPECT_THROW(sf::barnes_zeta(3.0, 1.0, 4), chibag::PoleError);
  EXPECT_THROW(sf::barnes_zeta(2.0, 1.0, 4), chibag::PoleError);
  EXPECT_THROW(sf::barnes_residue(4, 1.0, 4), chibag::DomainError);
  EXPECT_THROW(sf::barnes_zeta(4.0, 1.0, 3), chibag::DomainError);
  // e_0(1) = 0 for m = 4: no pole at s = 1.
  EXPECT_NO_THROW(sf::barnes_zeta(1.0, 1.0, 4));
}
