#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "chibag/clifford.hpp"

using chibag::Complex;
using chibag::Matrix;

namespace {

double max_entry(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Clifford, DiscRepresentationIsPinned) {
  const auto rep = chibag::build_gamma(2);
  const Complex i(0.0, 1.0);
  Matrix g1(2, 2), g2(2, 2), gt(2, 2);
  g1 << 0.0, i, i, 0.0;
  g2 << 0.0, 1.0, -1.0, 0.0;  // i * (0 -i; i 0)
  gt << 1.0, 0.0, 0.0, -1.0;
  EXPECT_EQ(rep.d_s, 2);
  EXPECT_LT(max_entry(rep.gamma(1) - g1), 1e-16);
  EXPECT_LT(max_entry(rep.gamma(2) - g2), 1e-16);
  EXPECT_LT(max_entry(rep.gamma_tilde - gt), 1e-16);
  EXPECT_LT(std::abs(rep.gamma_tilde.trace()), 1e-16);
}

TEST(Clifford, InvariantsHoldInAllDimensions) {
  for (int m = 2; m <= 12; m += 2) {
    const auto rep = chibag::build_gamma(m);
    EXPECT_EQ(rep.d_s, 1 << (m / 2));
    EXPECT_EQ(static_cast<int>(rep.gammas.size()), m);
    EXPECT_LT(chibag::gamma_rep_residual(rep), 1e-14) << m;
    const Matrix tn = rep.gamma_tilde * rep.gamma_normal();
    EXPECT_LT(max_entry(tn * tn - rep.identity()), 1e-14);
    // Traces used in the boundary cancellations.
    EXPECT_LT(std::abs(rep.gamma_normal().trace()), 1e-14);
    EXPECT_LT(std::abs(tn.trace()), 1e-14);
  }
}

TEST(Clifford, ChiralityIsTheOrderedProduct) {
  for (int m = 2; m <= 8; m += 2) {
    const auto rep = chibag::build_gamma(m);
    Matrix prod = rep.identity();
    for (int k = 1; k <= m; ++k) prod = prod * rep.gamma(k);
    const Complex phase = std::pow(Complex(0.0, 1.0), m / 2);
    EXPECT_LT(max_entry(phase * prod - rep.gamma_tilde), 1e-14);
  }
}

TEST(Clifford, RejectsBadDimensions) {
  for (int m : {0, 1, 3, 7, 14, -2}) EXPECT_THROW(chibag::build_gamma(m), chibag::DomainError) << m;
}

TEST(Projectors, IdempotentAndComplementary) {
  for (int m = 2; m <= 12; m += 2) {
    const auto rep = chibag::build_gamma(m);
    for (double theta : {-2.0, -0.7, 0.0, 0.4, 1.3, 2.0}) {
      const auto p = chibag::chiral_projectors(rep, theta);
      EXPECT_LT(chibag::projector_residual(rep, p), 1e-13) << m << " " << theta;
    }
  }
}

TEST(Projectors, ThetaZeroSplitsChi) {
  for (int m = 2; m <= 12; m += 2) {
    const auto rep = chibag::build_gamma(m);
    const auto p = chibag::chiral_projectors(rep, 0.0);
    const Matrix chi = chibag::mixed_chi(rep);
    EXPECT_LT(max_entry(p.pi_plus - 0.5 * (rep.identity() + chi)), 1e-15);
    EXPECT_LT(max_entry(p.pi_minus - 0.5 * (rep.identity() - chi)), 1e-15);
    EXPECT_LT(max_entry(chi * chi - rep.identity()), 1e-15);
    EXPECT_LT(max_entry(p.pi_plus - p.pi_plus.adjoint()), 1e-15);
    EXPECT_NEAR(p.pi_plus.trace().real(), rep.d_s / 2.0, 1e-14);
    EXPECT_NEAR(p.pi_minus.trace().real(), rep.d_s / 2.0, 1e-14);
  }
}

TEST(Projectors, DiscBoundaryMatrixSpectrum) {
  // Pi_- at m = 2, theta = 0.4 is similar to (1/2)(1 -i e^t; i e^-t 1):
  // eigenvalues {0, 1}, trace 1.
  const double theta = 0.4;
  const auto rep = chibag::build_gamma(2);
  const auto p = chibag::chiral_projectors(rep, theta);
  const Complex i(0.0, 1.0);
  Matrix ref(2, 2);
  ref << 0.5, -0.5 * i * std::exp(theta), 0.5 * i * std::exp(-theta), 0.5;
  for (const Matrix* mat : std::vector<const Matrix*>{&p.pi_minus, &ref}) {
    Eigen::ComplexEigenSolver<Matrix> es(*mat);
    auto ev = es.eigenvalues();
    std::vector<double> re{ev(0).real(), ev(1).real()};
    std::sort(re.begin(), re.end());
    EXPECT_NEAR(re[0], 0.0, 1e-14);
    EXPECT_NEAR(re[1], 1.0, 1e-14);
    EXPECT_NEAR(std::abs(ev(0).imag()) + std::abs(ev(1).imag()), 0.0, 1e-14);
    EXPECT_NEAR(mat->trace().real(), 1.0, 1e-15);
  }
}

TEST(Projectors, PiPlusProductClosedForm) {
  for (int m = 2; m <= 12; m += 2) {
    const auto rep = chibag::build_gamma(m);
    for (double theta : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) EXPECT_NO_THROW(chibag::pi_plus_product(rep, theta));
  }
  const auto rep2 = chibag::build_gamma(2);
  EXPECT_NEAR(chibag::pi_plus_product(rep2, 1.0).trace().real(), std::cosh(1.0) * std::cosh(1.0), 1e-14);
  const auto p0 = chibag::chiral_projectors(rep2, 0.0);
  EXPECT_LT(max_entry(chibag::pi_plus_product(rep2, 0.0) - p0.pi_plus), 1e-15);
}
