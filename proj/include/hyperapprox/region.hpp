#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace hyperapprox {

enum class RegionKind { interval, sphere };

struct Region {
  RegionKind kind;

  // Total measure V of the region: 2 for [-1,1] with dx, 4*pi for the unit sphere.
  constexpr double measure() const noexcept {
    return kind == RegionKind::interval ? 2.0 : 4.0 * std::numbers::pi;
  }

  static constexpr Region interval() noexcept { return {RegionKind::interval}; }
  static constexpr Region sphere() noexcept { return {RegionKind::sphere}; }

  friend constexpr bool operator==(Region, Region) = default;
};

inline const char* to_string(RegionKind k) noexcept {
  return k == RegionKind::interval ? "interval" : "sphere";
}

// A point of the unit sphere in Cartesian coordinates.
struct SphericalPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  constexpr SphericalPoint() = default;

  // Throws DomainError unless |x^2+y^2+z^2 - 1| <= 1e-12.
  SphericalPoint(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    if (std::abs(x * x + y * y + z * z - 1.0) > 1e-12) {
      throw DomainError("SphericalPoint: point is not on the unit sphere");
    }
  }

  // Scales an arbitrary nonzero vector onto the sphere.
  static SphericalPoint normalized(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw DomainError("SphericalPoint::normalized: zero or non-finite vector");
    }
    SphericalPoint p;
    p.x = x / r;
    p.y = y / r;
    p.z = z / r;
    return p;
  }

  static SphericalPoint from_angles(double theta, double phi) {
    const double s = std::sin(theta);
    SphericalPoint p;
    p.x = s * std::cos(phi);
    p.y = s * std::sin(phi);
    p.z = std::cos(theta);
    return p;
  }

  constexpr double dot(const SphericalPoint& o) const noexcept {
    return x * o.x + y * o.y + z * o.z;
  }

  double distance(const SphericalPoint& o) const noexcept {
    return std::hypot(x - o.x, y - o.y, z - o.z);
  }

  constexpr SphericalPoint antipode() const noexcept {
    SphericalPoint p;
    p.x = -x;
    p.y = -y;
    p.z = -z;
    return p;
  }
};

// Orthonormal frame whose third axis is `pole`; maps frame coordinates to the
// ambient ones. Used to integrate in coordinates where a singularity sits at
// the north pole.
class RotatedFrame {
public:
  explicit RotatedFrame(const SphericalPoint& pole) : e3_{pole.x, pole.y, pole.z} {
    // pick the ambient axis least aligned with the pole
    std::array<double, 3> a{0.0, 0.0, 0.0};
    const double ax = std::abs(pole.x), ay = std::abs(pole.y), az = std::abs(pole.z);
    if (ax <= ay && ax <= az) a[0] = 1.0;
    else if (ay <= az) a[1] = 1.0;
    else a[2] = 1.0;
    e1_ = normalize(cross(a, e3_));
    e2_ = cross(e3_, e1_);
  }

  SphericalPoint to_ambient(double theta, double phi) const {
    const double s = std::sin(theta), c = std::cos(theta);
    const double u = s * std::cos(phi), v = s * std::sin(phi);
    SphericalPoint p;
    p.x = u * e1_[0] + v * e2_[0] + c * e3_[0];
    p.y = u * e1_[1] + v * e2_[1] + c * e3_[1];
    p.z = u * e1_[2] + v * e2_[2] + c * e3_[2];
    return p;
  }

private:
  using Vec = std::array<double, 3>;
  static Vec cross(const Vec& a, const Vec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  }
  static Vec normalize(const Vec& a) {
    const double r = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    return {a[0] / r, a[1] / r, a[2] / r};
  }

  Vec e1_{}, e2_{}, e3_{};
};

} // namespace hyperapprox
