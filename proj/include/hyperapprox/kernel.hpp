#pragma once

// Kernel descriptors K for F = K f, their pointwise evaluation (classical
// hyperinterpolation and reference quadrature) and classification.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "orthopoly.hpp"
#include "region.hpp"

namespace hyperapprox {

namespace kernels {

struct IntervalOscillatory { double kappa; };          // e^{i kappa x}
struct IntervalAlgebraicLeft { double a; };            // (1+x)^a
struct IntervalAlgebraicRight { double a; };           // |x-1|^a = (1-x)^a on [-1,1]
struct IntervalChebyshevWeight {};                     // (1-x^2)^{-1/2}
struct SphereHarmonic { int lbar; int kbar; };         // Y_{lbar,kbar}
struct SphereAlgebraic { SphericalPoint xi; double nu; };                 // |xi-x|^nu
struct SphereLog { SphericalPoint xi; };                                  // log|xi-x|
struct SphereDoubleAlgebraic { SphericalPoint xi; double nu1; double nu2; }; // |xi-x|^nu1 |xi+x|^nu2
struct Unit {};                                        // K = 1 on either region

} // namespace kernels

using KernelDescriptor =
    std::variant<kernels::IntervalOscillatory, kernels::IntervalAlgebraicLeft,
                 kernels::IntervalAlgebraicRight, kernels::IntervalChebyshevWeight,
                 kernels::SphereHarmonic, kernels::SphereAlgebraic, kernels::SphereLog,
                 kernels::SphereDoubleAlgebraic, kernels::Unit>;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Throws DomainError when a parameter is outside its admissible range.
inline void validate(const KernelDescriptor& k) {
  std::visit(overloaded{
                 [](const kernels::IntervalOscillatory& o) {
                   if (!(o.kappa > 0.0) || !std::isfinite(o.kappa))
                     throw DomainError("oscillatory kernel: kappa must be positive and finite");
                 },
                 [](const kernels::IntervalAlgebraicLeft& o) {
                   if (!(o.a > -1.0)) throw DomainError("algebraic kernel: exponent must exceed -1");
                 },
                 [](const kernels::IntervalAlgebraicRight& o) {
                   if (!(o.a > -1.0)) throw DomainError("algebraic kernel: exponent must exceed -1");
                 },
                 [](const kernels::SphereHarmonic& o) {
                   if (o.lbar < 0 || o.kbar < -o.lbar || o.kbar > o.lbar)
                     throw IndexError("harmonic kernel: need |kbar| <= lbar");
                 },
                 [](const kernels::SphereAlgebraic& o) {
                   if (!(o.nu > -1.0)) throw DomainError("sphere algebraic kernel: nu must exceed -1");
                 },
                 [](const kernels::SphereDoubleAlgebraic& o) {
                   if (!(o.nu1 > -1.0) || !(o.nu2 > -1.0))
                     throw DomainError("double algebraic kernel: nu1, nu2 must exceed -1");
                 },
                 [](const auto&) {},
             },
             k);
}

inline bool is_complex(const KernelDescriptor& k) {
  return std::holds_alternative<kernels::IntervalOscillatory>(k);
}

inline bool is_unit(const KernelDescriptor& k) { return std::holds_alternative<kernels::Unit>(k); }

// Region the kernel lives on; nullopt for the region-agnostic unit kernel.
inline std::optional<RegionKind> kernel_region(const KernelDescriptor& k) {
  switch (k.index()) {
    case 0: case 1: case 2: case 3: return RegionKind::interval;
    case 4: case 5: case 6: case 7: return RegionKind::sphere;
    default: return std::nullopt;
  }
}

inline bool compatible(const KernelDescriptor& k, RegionKind r) {
  const auto kr = kernel_region(k);
  return !kr || *kr == r;
}

// Continuous (hence bounded) kernels: the continuous-kernel stability bound applies.
inline bool is_continuous(const KernelDescriptor& k) {
  return std::visit(overloaded{
                        [](const kernels::IntervalOscillatory&) { return true; },
                        [](const kernels::SphereHarmonic&) { return true; },
                        [](const kernels::Unit&) { return true; },
                        [](const kernels::IntervalAlgebraicLeft& o) { return o.a >= 0.0; },
                        [](const kernels::IntervalAlgebraicRight& o) { return o.a >= 0.0; },
                        [](const kernels::SphereAlgebraic& o) { return o.nu >= 0.0; },
                        [](const kernels::SphereDoubleAlgebraic& o) { return o.nu1 >= 0.0 && o.nu2 >= 0.0; },
                        [](const auto&) { return false; },
                    },
                    k);
}

inline bool is_square_integrable(const KernelDescriptor& k) {
  return std::visit(overloaded{
                        [](const kernels::IntervalAlgebraicLeft& o) { return 2.0 * o.a > -1.0; },
                        [](const kernels::IntervalAlgebraicRight& o) { return 2.0 * o.a > -1.0; },
                        [](const kernels::IntervalChebyshevWeight&) { return false; },
                        [](const auto&) { return true; },
                    },
                    k);
}

// Singular endpoints on the interval / singular points on the sphere.
inline bool singular_at_left(const KernelDescriptor& k) {
  if (auto* o = std::get_if<kernels::IntervalAlgebraicLeft>(&k)) return o->a < 0.0;
  return std::holds_alternative<kernels::IntervalChebyshevWeight>(k);
}
inline bool singular_at_right(const KernelDescriptor& k) {
  if (auto* o = std::get_if<kernels::IntervalAlgebraicRight>(&k)) return o->a < 0.0;
  return std::holds_alternative<kernels::IntervalChebyshevWeight>(k);
}
inline std::optional<SphericalPoint> sphere_singularity(const KernelDescriptor& k) {
  return std::visit(overloaded{
                        [](const kernels::SphereAlgebraic& o) -> std::optional<SphericalPoint> { return o.xi; },
                        [](const kernels::SphereLog& o) -> std::optional<SphericalPoint> { return o.xi; },
                        [](const kernels::SphereDoubleAlgebraic& o) -> std::optional<SphericalPoint> { return o.xi; },
                        [](const auto&) -> std::optional<SphericalPoint> { return std::nullopt; },
                    },
                    k);
}

// Interval sample with the distances to both endpoints carried separately, so
// a kernel singular at an endpoint can be evaluated at nodes closer to it
// than double spacing near +-1 allows.
struct IntervalSample {
  double x;
  double from_left;  // 1 + x
  double from_right; // 1 - x

  static IntervalSample at(double x) { return {x, 1.0 + x, 1.0 - x}; }
};

// Sphere sample with distances |xi - p| and |xi + p| to the kernel's
// singular point xi carried separately.
struct SphereSample {
  SphericalPoint p;
  double to_xi;
  double to_antipode;
};

inline SphereSample sphere_sample(const KernelDescriptor& k, const SphericalPoint& p) {
  if (auto xi = sphere_singularity(k)) return {p, xi->distance(p), xi->antipode().distance(p)};
  return {p, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
}

inline std::complex<double> kernel_value(const KernelDescriptor& k, const IntervalSample& s) {
  return std::visit(
      overloaded{
          [&](const kernels::IntervalOscillatory& o) { return std::polar(1.0, o.kappa * s.x); },
          [&](const kernels::IntervalAlgebraicLeft& o) { return std::complex<double>(std::pow(s.from_left, o.a)); },
          [&](const kernels::IntervalAlgebraicRight& o) { return std::complex<double>(std::pow(s.from_right, o.a)); },
          [&](const kernels::IntervalChebyshevWeight&) {
            return std::complex<double>(1.0 / std::sqrt(s.from_left * s.from_right));
          },
          [&](const kernels::Unit&) { return std::complex<double>(1.0); },
          [&](const auto&) -> std::complex<double> {
            throw DomainError("kernel_value: sphere kernel evaluated on the interval");
          },
      },
      k);
}

inline std::complex<double> kernel_value(const KernelDescriptor& k, const SphereSample& s) {
  return std::visit(
      overloaded{
          [&](const kernels::SphereHarmonic& o) {
            return std::complex<double>(spherical_harmonic(o.lbar, o.kbar, s.p));
          },
          [&](const kernels::SphereAlgebraic& o) { return std::complex<double>(std::pow(s.to_xi, o.nu)); },
          [&](const kernels::SphereLog&) { return std::complex<double>(std::log(s.to_xi)); },
          [&](const kernels::SphereDoubleAlgebraic& o) {
            return std::complex<double>(std::pow(s.to_xi, o.nu1) * std::pow(s.to_antipode, o.nu2));
          },
          [&](const kernels::Unit&) { return std::complex<double>(1.0); },
          [&](const auto&) -> std::complex<double> {
            throw DomainError("kernel_value: interval kernel evaluated on the sphere");
          },
      },
      k);
}

inline std::complex<double> kernel_value(const KernelDescriptor& k, double x) {
  return kernel_value(k, IntervalSample::at(x));
}
inline std::complex<double> kernel_value(const KernelDescriptor& k, const SphericalPoint& p) {
  return kernel_value(k, sphere_sample(k, p));
}

// Distance from a point to the nearest singularity of K (infinity if none).
inline double singularity_distance(const KernelDescriptor& k, double x) {
  double d = std::numeric_limits<double>::infinity();
  if (singular_at_left(k)) d = std::min(d, 1.0 + x);
  if (singular_at_right(k)) d = std::min(d, 1.0 - x);
  return d;
}
inline double singularity_distance(const KernelDescriptor& k, const SphericalPoint& p) {
  double d = std::numeric_limits<double>::infinity();
  if (auto* o = std::get_if<kernels::SphereAlgebraic>(&k)) {
    if (o->nu < 0.0) d = o->xi.distance(p);
  } else if (auto* l = std::get_if<kernels::SphereLog>(&k)) {
    d = l->xi.distance(p);
  } else if (auto* dd = std::get_if<kernels::SphereDoubleAlgebraic>(&k)) {
    if (dd->nu1 < 0.0) d = std::min(d, dd->xi.distance(p));
    if (dd->nu2 < 0.0) d = std::min(d, dd->xi.antipode().distance(p));
  }
  return d;
}

// Scalar conversion used by the templated operators; real scalars reject
// complex kernel values.
template <class Scalar>
Scalar to_scalar(std::complex<double> v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return v.real();
  } else {
    return v;
  }
}

// Short name used on the command line and in CSV output.
inline std::string kernel_name(const KernelDescriptor& k) {
  static const char* names[] = {"osc",     "alg_left",   "alg_right",     "cheb_weight", "harmonic",
                                "sphere_alg", "sphere_log", "sphere_double", "unit"};
  return names[k.index()];
}

inline std::string kernel_parameter(const KernelDescriptor& k) {
  char buf[96];
  std::visit(overloaded{
                 [&](const kernels::IntervalOscillatory& o) { std::snprintf(buf, sizeof buf, "%.6g", o.kappa); },
                 [&](const kernels::IntervalAlgebraicLeft& o) { std::snprintf(buf, sizeof buf, "%.6g", o.a); },
                 [&](const kernels::IntervalAlgebraicRight& o) { std::snprintf(buf, sizeof buf, "%.6g", o.a); },
                 [&](const kernels::SphereHarmonic& o) { std::snprintf(buf, sizeof buf, "%d:%d", o.lbar, o.kbar); },
                 [&](const kernels::SphereAlgebraic& o) { std::snprintf(buf, sizeof buf, "%.6g", o.nu); },
                 [&](const kernels::SphereDoubleAlgebraic& o) {
                   std::snprintf(buf, sizeof buf, "%.6g:%.6g", o.nu1, o.nu2);
                 },
                 [&](const auto&) { buf[0] = '\0'; },
             },
             k);
  return buf;
}

// Unique textual key (name + all parameters at full precision) for caches.
inline std::string kernel_key(const KernelDescriptor& k) {
  char buf[192];
  std::visit(overloaded{
                 [&](const kernels::IntervalOscillatory& o) { std::snprintf(buf, sizeof buf, "%.17g", o.kappa); },
                 [&](const kernels::IntervalAlgebraicLeft& o) { std::snprintf(buf, sizeof buf, "%.17g", o.a); },
                 [&](const kernels::IntervalAlgebraicRight& o) { std::snprintf(buf, sizeof buf, "%.17g", o.a); },
                 [&](const kernels::SphereHarmonic& o) { std::snprintf(buf, sizeof buf, "%d:%d", o.lbar, o.kbar); },
                 [&](const kernels::SphereAlgebraic& o) {
                   std::snprintf(buf, sizeof buf, "%.17g|%.17g,%.17g,%.17g", o.nu, o.xi.x, o.xi.y, o.xi.z);
                 },
                 [&](const kernels::SphereLog& o) {
                   std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", o.xi.x, o.xi.y, o.xi.z);
                 },
                 [&](const kernels::SphereDoubleAlgebraic& o) {
                   std::snprintf(buf, sizeof buf, "%.17g:%.17g|%.17g,%.17g,%.17g", o.nu1, o.nu2, o.xi.x, o.xi.y,
                                 o.xi.z);
                 },
                 [&](const auto&) { buf[0] = '\0'; },
             },
             k);
  return kernel_name(k) + "|" + buf;
}

} // namespace hyperapprox
