#pragma once

// Globally adaptive Gauss-Kronrod (10/21 point) integration on a finite
// interval with bisection of the panel carrying the largest error estimate.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace hyperapprox {

struct AdaptiveOptions {
  double abs_tol = 1e-13;
  int initial_panels = 1;
  long max_evals = 1'000'000;
};

template <class T>
struct AdaptiveResult {
  T value{};
  double error = 0.0;
  long evals = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 11> kXgk{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077685846040347, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod abscissae kXgk[1], kXgk[3], ...
inline constexpr std::array<double, 5> kWg{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk21(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T k = fc * kWgk[10];
  T g{};
  for (int i = 0; i < 10; ++i) {
    const double dx = h * kXgk[static_cast<std::size_t>(i)];
    const T s = f(c - dx) + f(c + dx);
    k += s * kWgk[static_cast<std::size_t>(i)];
    if (i % 2 == 1) g += s * kWg[static_cast<std::size_t>(i / 2)];
  }
  k *= h;
  g *= h;
  return {a, b, k, magnitude(k - g)};
}

} // namespace detail

// Integrates f over [a,b] to absolute tolerance opts.abs_tol. The result is
// flagged not converged when the evaluation budget runs out first.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opts = {}) {
  using T = std::decay_t<decltype(f(a))>;
  AdaptiveResult<T> res;
  std::priority_queue<detail::Panel<T>> heap;
  const int p0 = opts.initial_panels < 1 ? 1 : opts.initial_panels;
  const double step = (b - a) / p0;
  T total{};
  double err = 0.0;
  for (int i = 0; i < p0; ++i) {
    const double lo = a + step * i, hi = (i + 1 == p0) ? b : a + step * (i + 1);
    auto p = detail::gk21<T>(f, lo, hi);
    res.evals += 21;
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  while (err > opts.abs_tol && res.evals < opts.max_evals) {
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // panel cannot be split further in double precision
      heap.push(worst);
      break;
    }
    auto left = detail::gk21<T>(f, worst.a, mid);
    auto right = detail::gk21<T>(f, mid, worst.b);
    res.evals += 42;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // re-sum to shed the drift from incremental updates
  total = T{};
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  res.value = total;
  res.error = err;
  res.converged = err <= opts.abs_tol;
  return res;
}

} // namespace hyperapprox
