#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "chibag/quadrature.hpp"
#include "chibag/summation.hpp"

using namespace chibag;

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  s += 1.0;
  s += 1e100;
  s += 1.0;
  s += -1e100;
  EXPECT_EQ(s.value(), 2.0);
  CompensatedSum h;
  for (int i = 0; i < 1000000; ++i) h += 0.1;
  EXPECT_NEAR(h.value(), 100000.0, 1e-9);
}

TEST(Quadrature, SmoothIntegrals) {
  EXPECT_NEAR(quadrature::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value, 2.0, 1e-14);
  EXPECT_NEAR(quadrature::integrate([](double x) { return std::exp(-x * x); }, 0.0, 10.0).value,
              std::sqrt(std::numbers::pi) / 2.0, 1e-14);
}

TEST(Quadrature, EndpointSingularity) {
  const auto r = quadrature::integrate([](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_GT(r.intervals, 1);
}

TEST(Quadrature, VectorValued) {
  const auto r = quadrature::integrate([](double x) { return Eigen::Vector2d(x, x * x); }, 0.0, 3.0);
  EXPECT_NEAR(r.value(0), 4.5, 1e-14);
  EXPECT_NEAR(r.value(1), 9.0, 1e-13);
}

TEST(Quadrature, BudgetExhaustion) {
  quadrature::Options opts;
  opts.max_intervals = 3;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-15;
  EXPECT_THROW(quadrature::integrate([](double x) { return std::sin(1.0 / (x + 1e-4)); }, 0.0, 1.0, opts),
               ConvergenceError);
}

TEST(Quadrature, FixedRuleConverges) {
  auto f = [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
  const double exact = 2.0 / 5.0 * std::atan(5.0);
  const double e1 = std::abs(quadrature::integrate_fixed(f, -1.0, 1.0, 1) - exact);
  const double e4 = std::abs(quadrature::integrate_fixed(f, -1.0, 1.0, 4) - exact);
  const double e16 = std::abs(quadrature::integrate_fixed(f, -1.0, 1.0, 16) - exact);
  EXPECT_GT(e1, e4);
  EXPECT_GT(e4, e16);
  EXPECT_LT(e16, 1e-13);
}
