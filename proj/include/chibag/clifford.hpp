#ifndef CHIBAG_CLIFFORD_HPP
#define CHIBAG_CLIFFORD_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chibag/errors.hpp"

namespace chibag {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Clifford algebra representation in even dimension m:
/// gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij, gamma_i skew-adjoint,
/// gamma_tilde = i^{m/2} gamma_1 ... gamma_m.
struct GammaRep {
  int m = 0;
  int d_s = 0;
  std::vector<Matrix> gammas;  // gammas[i] is gamma_{i+1}
  Matrix gamma_tilde;

  const Matrix& gamma(int i) const { return gammas.at(static_cast<std::size_t>(i - 1)); }
  /// Inward normal direction gamma_m.
  const Matrix& gamma_normal() const { return gammas.back(); }
  Matrix identity() const { return Matrix::Identity(d_s, d_s); }
};

namespace detail {

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix kron_chain(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

inline double max_entry(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace detail

/// Jordan-Wigner construction: Gamma_{2j-1} = sz^(j-1) x sx x 1, Gamma_{2j} =
/// sz^(j-1) x sy x 1, gamma_j = i Gamma_j. Then gamma_tilde = sz^(m/2), which
/// for m = 2 is diag(1, -1).
inline GammaRep build_gamma(int m) {
  if (m < 2 || m > 12 || m % 2 != 0)
    throw DomainError("build_gamma: m must be even with 2 <= m <= 12, got " + std::to_string(m));
  const int k = m / 2;
  const Complex i1(0.0, 1.0);
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -i1, i1, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  const Matrix id2 = Matrix::Identity(2, 2);

  GammaRep rep;
  rep.m = m;
  rep.d_s = 1 << k;
  for (int j = 1; j <= k; ++j) {
    for (const Matrix* pauli : {&sx, &sy}) {
      std::vector<Matrix> factors;
      for (int l = 1; l <= k; ++l) factors.push_back(l < j ? sz : (l == j ? *pauli : id2));
      rep.gammas.push_back(i1 * detail::kron_chain(factors));
    }
  }
  Matrix prod = rep.identity();
  for (const auto& g : rep.gammas) prod = prod * g;
  rep.gamma_tilde = std::pow(i1, k) * prod;
  return rep;
}

/// Largest entrywise violation of the GammaRep invariants.
inline double gamma_rep_residual(const GammaRep& rep) {
  const Matrix id = rep.identity();
  double worst = 0.0;
  auto track = [&worst](const Matrix& r) { worst = std::max(worst, detail::max_entry(r)); };
  for (int i = 1; i <= rep.m; ++i) {
    track(rep.gamma(i).adjoint() + rep.gamma(i));
    for (int j = i; j <= rep.m; ++j) {
      const Matrix anti = rep.gamma(i) * rep.gamma(j) + rep.gamma(j) * rep.gamma(i);
      track(i == j ? Matrix(anti + 2.0 * id) : anti);
    }
    track(rep.gamma_tilde * rep.gamma(i) + rep.gamma(i) * rep.gamma_tilde);
  }
  track(rep.gamma_tilde * rep.gamma_tilde - id);
  worst = std::max(worst, std::abs(rep.gamma_tilde.trace()));
  const Matrix tn = rep.gamma_tilde * rep.gamma_normal();
  track(tn * tn - id);
  return worst;
}

/// Pi_-/+ = (1 +/- e^{theta gamma_tilde} gamma_tilde gamma_m) / 2. The bag
/// condition is Pi_- phi = 0 on the boundary.
struct ChiralProjectors {
  double theta = 0.0;
  Matrix pi_plus;
  Matrix pi_minus;
};

/// e^{theta gamma_tilde} = cosh(theta) + sinh(theta) gamma_tilde, exact since gamma_tilde^2 = 1.
inline Matrix chiral_exponential(const GammaRep& rep, double theta) {
  return std::cosh(theta) * rep.identity() + std::sinh(theta) * rep.gamma_tilde;
}

inline ChiralProjectors chiral_projectors(const GammaRep& rep, double theta) {
  const Matrix b = chiral_exponential(rep, theta) * rep.gamma_tilde * rep.gamma_normal();
  const Matrix id = rep.identity();
  return {theta, 0.5 * (id - b), 0.5 * (id + b)};
}

/// chi = -gamma_tilde gamma_m; at theta = 0 the projectors split its eigenspaces.
inline Matrix mixed_chi(const GammaRep& rep) { return -rep.gamma_tilde * rep.gamma_normal(); }

/// Largest entrywise violation of idempotency and completeness.
inline double projector_residual(const GammaRep& rep, const ChiralProjectors& p) {
  return std::max({detail::max_entry(p.pi_plus * p.pi_plus - p.pi_plus),
                   detail::max_entry(p.pi_minus * p.pi_minus - p.pi_minus),
                   detail::max_entry(p.pi_plus + p.pi_minus - rep.identity())});
}

inline constexpr double kMatrixTol = 1e-13;

/// Pi_+ Pi_+^dagger, checked against cosh(theta)/2 (cosh + sinh gamma_tilde - gamma_tilde gamma_m).
inline Matrix pi_plus_product(const GammaRep& rep, double theta) {
  const auto p = chiral_projectors(rep, theta);
  const Matrix product = p.pi_plus * p.pi_plus.adjoint();
  const double ch = std::cosh(theta);
  const Matrix closed = 0.5 * ch *
                        (ch * rep.identity() + std::sinh(theta) * rep.gamma_tilde -
                         rep.gamma_tilde * rep.gamma_normal());
  const double residual = detail::max_entry(product - closed);
  if (residual > kMatrixTol) throw ConsistencyError("pi_plus_product: closed form mismatch", residual);
  return product;
}

}  // namespace chibag

#endif  // CHIBAG_CLIFFORD_HPP
