#ifndef CHIBAG_QUADRATURE_HPP
#define CHIBAG_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>
#include <vector>

#include "chibag/errors.hpp"

namespace chibag::quadrature {

// Magnitude used for error control. Scalars use |x|; matrix-like types
// (anything with cwiseAbs()) use the largest entry modulus.
inline double magnitude(double x) { return std::abs(x); }

template <class M>
auto magnitude(const M& x) -> decltype(x.cwiseAbs().maxCoeff(), double()) {
  return static_cast<double>(x.cwiseAbs().maxCoeff());
}

struct Options {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  int max_intervals = 4000;
};

template <class T>
struct Result {
  T value;
  double error;      // estimated absolute error (magnitude norm)
  int intervals;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
// (positive abscissae; index 7 is the centre).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
auto gauss_kronrod_15(F& f, double a, double b) {
  using T = std::decay_t<decltype(f(a))>;
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(centre);
  T kronrod = kKronrodWeights[7] * fc;
  T gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T f1 = f(centre - dx);
    const T f2 = f(centre + dx);
    kronrod = kronrod + kKronrodWeights[j] * (f1 + f2);
    if (j % 2 == 1) gauss = gauss + kGaussWeights[j / 2] * (f1 + f2);
  }
  T value = half * kronrod;
  const double err = magnitude(T(half * (kronrod - gauss)));
  return Panel<T>{a, b, value, err};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b]: the panel with
// the largest error estimate is bisected until the summed estimate meets
// max(abs_tol, rel_tol * |I|).
template <class F>
auto integrate(F&& f, double a, double b, const Options& opts = {}) {
  using T = std::decay_t<decltype(f(a))>;
  std::vector<detail::Panel<T>> heap;
  heap.push_back(detail::gauss_kronrod_15(f, a, b));
  T total = heap.front().value;
  double error = heap.front().error;
  while (error > std::max(opts.abs_tol, opts.rel_tol * magnitude(total))) {
    if (static_cast<int>(heap.size()) >= opts.max_intervals)
      throw ConvergenceError("adaptive quadrature: interval budget exhausted");
    std::pop_heap(heap.begin(), heap.end());
    const detail::Panel<T> worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    heap.push_back(detail::gauss_kronrod_15(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(detail::gauss_kronrod_15(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end());
    total = heap.front().value;
    error = 0.0;
    for (std::size_t i = 1; i < heap.size(); ++i) total = total + heap[i].value;
    for (const auto& p : heap) error += p.error;
  }
  // Sum panels in left-to-right order so the result does not depend on heap layout.
  std::sort(heap.begin(), heap.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  T sum = heap.front().value;
  for (std::size_t i = 1; i < heap.size(); ++i) sum = sum + heap[i].value;
  return Result<T>{sum, error, static_cast<int>(heap.size())};
}

// Composite 15-point Kronrod rule on `panels` equal sub-intervals (no
// adaptivity); used to observe convergence order.
template <class F>
auto integrate_fixed(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  auto sum = detail::gauss_kronrod_15(f, a, a + h).value;
  for (int i = 1; i < panels; ++i)
    sum = sum + detail::gauss_kronrod_15(f, a + i * h, a + (i + 1) * h).value;
  return sum;
}

}  // namespace chibag::quadrature

#endif  // CHIBAG_QUADRATURE_HPP
