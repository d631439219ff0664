#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace hyperapprox::special {

// Gamma function by the Lanczos approximation (g = 7, nine coefficients) with
// reflection for x < 1/2. Relative error is around 1e-15 for positive
// arguments of moderate size.
inline double gamma(double x) {
  static constexpr std::array<double, 9> c{
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    if (x == std::floor(x)) throw DomainError("gamma: pole at non-positive integer");
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  }
  x -= 1.0;
  double a = c[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += c[i] / (x + i);
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

// Rising factorial (a)_n = a (a+1) ... (a+n-1), computed multiplicatively.
inline double pochhammer(double a, int n) {
  if (n < 0) throw DomainError("pochhammer: negative order");
  double p = 1.0;
  for (int j = 0; j < n; ++j) p *= a + j;
  return p;
}

// (a)_n / Gamma(n + b) as a running product so large n neither overflows nor
// underflows prematurely: prod_{j<n} (a+j)/(b+j) / Gamma(b).
inline double pochhammer_over_gamma(double a, int n, double b) {
  if (n < 0) throw DomainError("pochhammer_over_gamma: negative order");
  double p = 1.0 / gamma(b);
  for (int j = 0; j < n; ++j) p *= (a + j) / (b + j);
  return p;
}

// R_{n,s} = Gamma((s-1)/2) / (2^n Gamma(n + (s-1)/2)), the Rodrigues-formula
// constant for Legendre polynomials in R^s (R_{n,3} = 1/(2^n n!)).
inline double rodrigues_constant(int n, int s) {
  if (s < 2) throw DomainError("rodrigues_constant: need s >= 2");
  const double h = (s - 1) / 2.0;
  return std::ldexp(1.0, -n) / pochhammer(h, n);
}

} // namespace hyperapprox::special
