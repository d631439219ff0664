#pragma once

// Orthonormal bases: normalized Legendre and Chebyshev polynomials on [-1,1],
// real orthonormal spherical harmonics on the unit sphere.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "region.hpp"

namespace hyperapprox {

namespace detail {

inline void check_unit_interval(double x, const char* op) {
  if (!(std::abs(x) <= 1.0 + 1e-12)) {
    throw DomainError(std::string(op) + ": argument outside [-1,1]");
  }
}

} // namespace detail

// Classical Legendre polynomial P_l(x) with P_l(1) = 1.
inline double legendre(int l, double x) {
  if (l < 0) throw IndexError("legendre: negative degree");
  detail::check_unit_interval(x, "legendre");
  double p0 = 1.0, p1 = x;
  if (l == 0) return p0;
  for (int j = 2; j <= l; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Legendre polynomial normalized so that int_{-1}^{1} P~_l^2 dx = 1.
inline double legendre_normalized(int l, double x) {
  return std::sqrt((2.0 * l + 1.0) / 2.0) * legendre(l, x);
}

// out[l] = P~_l(x), l = 0..n.
inline void legendre_normalized_all(int n, double x, std::span<double> out) {
  detail::check_unit_interval(x, "legendre_normalized_all");
  double p0 = 1.0, p1 = x;
  out[0] = std::sqrt(0.5);
  if (n >= 1) out[1] = std::sqrt(1.5) * x;
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
    out[j] = std::sqrt((2.0 * j + 1.0) / 2.0) * p2;
  }
}

// Chebyshev polynomial of the first kind, T_r(x) = cos(r arccos x).
inline double chebyshev(int r, double x) {
  if (r < 0) throw IndexError("chebyshev: negative degree");
  detail::check_unit_interval(x, "chebyshev");
  double t0 = 1.0, t1 = x;
  if (r == 0) return t0;
  for (int j = 2; j <= r; ++j) {
    const double t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

inline void chebyshev_all(int n, double x, std::span<double> out) {
  detail::check_unit_interval(x, "chebyshev_all");
  out[0] = 1.0;
  if (n >= 1) out[1] = x;
  for (int j = 2; j <= n; ++j) out[j] = 2.0 * x * out[j - 1] - out[j - 2];
}

// ---------------------------------------------------------------------------
// Spherical harmonic indexing. Ordering is degree-major with the order running
// from -l to l, so the harmonics of degree <= n occupy (n+1)^2 slots.

constexpr std::size_t sphere_dim(int n) noexcept {
  return static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1);
}

// Zero-based storage slot of Y_{l,k}.
inline std::size_t harmonic_slot(int l, int k) {
  if (l < 0 || k < -l || k > l) throw IndexError("harmonic_slot: need 0 <= l and |k| <= l");
  return static_cast<std::size_t>(l) * static_cast<std::size_t>(l) + static_cast<std::size_t>(l + k);
}

// One-based flat index: (0,0) -> 1, (1,-1) -> 2, (l,k) -> l^2 + l + k + 1.
inline std::size_t flat_index(int l, int k) { return harmonic_slot(l, k) + 1; }

// Inverse of flat_index.
inline std::pair<int, int> degree_order(std::size_t flat) {
  if (flat == 0) throw IndexError("degree_order: flat indices start at 1");
  const auto slot = flat - 1;
  int l = static_cast<int>(std::sqrt(static_cast<double>(slot)));
  while (static_cast<std::size_t>(l) * l > slot) --l;
  while (static_cast<std::size_t>(l + 1) * (l + 1) <= slot) ++l;
  return {l, static_cast<int>(slot - static_cast<std::size_t>(l) * l) - l};
}

// All real orthonormal spherical harmonics of degree <= n at p, written to
// out[harmonic_slot(l,k)].
//
// Y_{l,0} = Q_l^0(z), Y_{l,m} = sqrt(2) Q_l^m(z) cos(m phi), Y_{l,-m} =
// sqrt(2) Q_l^m(z) sin(m phi), with Q_l^m the fully normalized associated
// Legendre function without the Condon-Shortley phase. The factor
// sin(theta)^m is carried by (x + i y)^m so the recurrence never divides by it.
inline void spherical_harmonics_all(int n, const SphericalPoint& p, std::span<double> out) {
  if (n < 0) throw IndexError("spherical_harmonics_all: negative degree");
  const double t = p.z;
  double qmm = 1.0 / std::sqrt(4.0 * std::numbers::pi); // Q^m_m / sin^m
  double cr = 1.0, ci = 0.0;                            // (x + i y)^m
  for (int m = 0; m <= n; ++m) {
    if (m > 0) {
      qmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      const double nr = cr * p.x - ci * p.y;
      ci = cr * p.y + ci * p.x;
      cr = nr;
    }
    const double fc = m == 0 ? 1.0 : std::numbers::sqrt2 * cr;
    const double fs = std::numbers::sqrt2 * ci;
    auto store = [&](int l, double q) {
      const std::size_t base = static_cast<std::size_t>(l) * l + l;
      out[base + m] = q * fc;
      if (m > 0) out[base - m] = q * fs;
    };
    double q0 = qmm;
    store(m, q0);
    if (m == n) break;
    double q1 = std::sqrt(2.0 * m + 3.0) * t * qmm;
    store(m + 1, q1);
    for (int l = m + 2; l <= n; ++l) {
      const double ll = static_cast<double>(l) * l, mm = static_cast<double>(m) * m;
      const double a = std::sqrt((4.0 * ll - 1.0) / (ll - mm));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - mm) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      const double q2 = a * (t * q1 - b * q0);
      q0 = q1;
      q1 = q2;
      store(l, q2);
    }
  }
}

inline double spherical_harmonic(int l, int k, const SphericalPoint& p) {
  if (l < 0 || k < -l || k > l) throw IndexError("spherical_harmonic: need 0 <= l and |k| <= l");
  std::vector<double> all(sphere_dim(l));
  spherical_harmonics_all(l, p, all);
  return all[harmonic_slot(l, k)];
}

// ---------------------------------------------------------------------------

enum class BasisFamily { legendre_normalized, chebyshev, spherical_harmonic };

struct BasisSet {
  Region region;
  BasisFamily family;
  int max_degree;

  std::size_t dim() const noexcept {
    return family == BasisFamily::spherical_harmonic ? sphere_dim(max_degree)
                                                     : static_cast<std::size_t>(max_degree + 1);
  }
};

// Domain traits used by the templated operators. Each provides the point
// type, the orthonormal basis of P_n and its dimension d_n.
struct Interval {
  using Point = double;
  static constexpr Region region() noexcept { return Region::interval(); }
  static constexpr std::size_t dim(int n) noexcept { return static_cast<std::size_t>(n + 1); }
  static int degree_of_slot(std::size_t slot) noexcept { return static_cast<int>(slot); }
  static void basis(int n, Point x, std::span<double> out) { legendre_normalized_all(n, x, out); }
  static BasisSet basis_set(int n) { return {region(), BasisFamily::legendre_normalized, n}; }
  static void check_point(Point x) { detail::check_unit_interval(x, "interval point"); }
};

struct Sphere {
  using Point = SphericalPoint;
  static constexpr Region region() noexcept { return Region::sphere(); }
  static constexpr std::size_t dim(int n) noexcept { return sphere_dim(n); }
  static int degree_of_slot(std::size_t slot) noexcept {
    return degree_order(slot + 1).first;
  }
  static void basis(int n, const Point& p, std::span<double> out) { spherical_harmonics_all(n, p, out); }
  static BasisSet basis_set(int n) { return {region(), BasisFamily::spherical_harmonic, n}; }
  static void check_point(const Point& p) {
    if (std::abs(p.dot(p) - 1.0) > 1e-12) throw DomainError("sphere point: not on the unit sphere");
  }
};

// Row j holds the basis of degree <= n evaluated at points[j].
template <class Domain>
Eigen::MatrixXd basis_matrix(int n, std::span<const typename Domain::Point> points) {
  const auto d = static_cast<Eigen::Index>(Domain::dim(n));
  Eigen::MatrixXd b(static_cast<Eigen::Index>(points.size()), d);
  std::vector<double> row(static_cast<std::size_t>(d));
  for (std::size_t j = 0; j < points.size(); ++j) {
    Domain::basis(n, points[j], row);
    for (Eigen::Index l = 0; l < d; ++l) b(static_cast<Eigen::Index>(j), l) = row[static_cast<std::size_t>(l)];
  }
  return b;
}

} // namespace hyperapprox
