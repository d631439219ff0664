#pragma once

// Reference quadrature for error norms and the orthogonal projection P_n:
// composite Gauss-Legendre panels, geometrically graded toward kernel
// singularities, with endpoint distances carried exactly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <type_traits>
#include <vector>

#include "errors.hpp"
#include "hyperinterp.hpp"
#include "kernel.hpp"
#include "orthopoly.hpp"
#include "quadrature.hpp"

namespace hyperapprox {

struct ReferenceOptions {
  double density = 1.0;     // panel and longitude counts scale with this
  int grading_levels = 40;  // geometric panels toward each singularity
  double grading_ratio = 0.15;
};

template <class Sample>
struct ReferenceGrid {
  std::vector<Sample> samples;
  std::vector<double> weights;

  std::size_t size() const noexcept { return samples.size(); }
};

inline double point_of(const IntervalSample& s) { return s.x; }
inline const SphericalPoint& point_of(const SphereSample& s) { return s.p; }

// Sum of a sequence by recursive halving; rounding error grows like log(N).
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const auto half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace detail {

// Nodes on [0, h] in the distance-from-endpoint variable: geometric panels
// [h r^{k+1}, h r^k], k < levels, plus [0, h r^levels].
inline void graded_offsets(double h, const ReferenceOptions& opt, std::vector<double>& y, std::vector<double>& w) {
  const auto gl = gauss_legendre(20);
  auto add_panel = [&](double a, double b) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.size(); ++i) {
      y.push_back(c + r * gl.points[i]);
      w.push_back(r * gl.weights[i]);
    }
  };
  double hi = h;
  for (int k = 0; k < opt.grading_levels; ++k) {
    const double lo = hi * opt.grading_ratio;
    add_panel(lo, hi);
    hi = lo;
  }
  add_panel(0.0, hi);
}

} // namespace detail

inline ReferenceGrid<IntervalSample> reference_grid_interval(const KernelDescriptor& kernel, int n,
                                                             const ReferenceOptions& opt = {}) {
  double kappa = 0.0;
  if (auto* o = std::get_if<kernels::IntervalOscillatory>(&kernel)) kappa = o->kappa;
  const int panels = static_cast<int>(std::ceil(std::max(40.0, 4.0 * (kappa + n) / std::numbers::pi) * opt.density));
  const double h = 2.0 / panels;
  const auto gl = gauss_legendre(24);
  ReferenceGrid<IntervalSample> g;
  g.samples.reserve(static_cast<std::size_t>(panels) * 24 + 2000);
  g.weights.reserve(g.samples.capacity());
  const bool left = singular_at_left(kernel), right = singular_at_right(kernel);
  for (int i = 0; i < panels; ++i) {
    if ((i == 0 && left) || (i + 1 == panels && right)) continue;
    const double a = -1.0 + h * i, b = (i + 1 == panels) ? 1.0 : -1.0 + h * (i + 1);
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    for (std::size_t q = 0; q < gl.size(); ++q) {
      g.samples.push_back(IntervalSample::at(c + r * gl.points[q]));
      g.weights.push_back(r * gl.weights[q]);
    }
  }
  std::vector<double> y, w;
  detail::graded_offsets(h, opt, y, w);
  for (std::size_t q = 0; q < y.size(); ++q) {
    if (left) {
      g.samples.push_back({-1.0 + y[q], y[q], 2.0 - y[q]});
      g.weights.push_back(w[q]);
    }
    if (right) {
      g.samples.push_back({1.0 - y[q], 2.0 - y[q], y[q]});
      g.weights.push_back(w[q]);
    }
  }
  return g;
}

// Sphere reference grid. Kernels with a singular point xi are integrated in
// a frame with xi at the north pole: Gauss-Legendre panels in the polar
// angle graded toward both poles, times a trapezoidal rule in longitude.
// Other kernels use a product rule of exactness 2n + 2lbar + 60.
inline ReferenceGrid<SphereSample> reference_grid_sphere(const KernelDescriptor& kernel, int n,
                                                         const ReferenceOptions& opt = {}) {
  ReferenceGrid<SphereSample> g;
  const auto xi = sphere_singularity(kernel);
  if (!xi) {
    int lbar = 0;
    if (auto* h = std::get_if<kernels::SphereHarmonic>(&kernel)) lbar = h->lbar;
    const auto rule = sphere_product_rule(static_cast<int>(std::ceil((2.0 * n + 2.0 * lbar + 60.0) * opt.density)));
    g.samples.reserve(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) g.samples.push_back(sphere_sample(kernel, rule.points[j]));
    g.weights = rule.weights;
    return g;
  }
  const RotatedFrame frame(*xi);
  const int panels = static_cast<int>(std::ceil(std::max(16.0, (2.0 * n + 40.0) / 8.0) * opt.density));
  const int nphi = static_cast<int>(std::ceil((2.0 * n + 64.0) * opt.density));
  const double h = std::numbers::pi / panels;
  const auto gl = gauss_legendre(24);

  // (theta, distance to the nearer pole, which pole, weight)
  struct Ring {
    double theta, offset;
    bool near_south;
    double w;
  };
  std::vector<Ring> rings;
  for (int i = 1; i + 1 < panels; ++i) {
    const double a = h * i, b = h * (i + 1);
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    for (std::size_t q = 0; q < gl.size(); ++q) {
      const double th = c + r * gl.points[q];
      const bool south = th > 0.5 * std::numbers::pi;
      rings.push_back({th, south ? std::numbers::pi - th : th, south, r * gl.weights[q]});
    }
  }
  std::vector<double> y, w;
  detail::graded_offsets(h, opt, y, w);
  for (std::size_t q = 0; q < y.size(); ++q) {
    rings.push_back({y[q], y[q], false, w[q]});
    rings.push_back({std::numbers::pi - y[q], y[q], true, w[q]});
  }
  const double dphi = 2.0 * std::numbers::pi / nphi;
  g.samples.reserve(rings.size() * static_cast<std::size_t>(nphi));
  g.weights.reserve(g.samples.capacity());
  for (const auto& ring : rings) {
    // half-angle distances from the pole offset: |xi - x| = 2 sin(theta/2)
    const double near = 2.0 * std::sin(0.5 * ring.offset);
    const double far = 2.0 * std::cos(0.5 * ring.offset);
    const double to_xi = ring.near_south ? far : near;
    const double to_anti = ring.near_south ? near : far;
    const double wt = ring.w * std::sin(ring.offset) * dphi;
    for (int j = 0; j < nphi; ++j) {
      g.samples.push_back({frame.to_ambient(ring.theta, dphi * j), to_xi, to_anti});
      g.weights.push_back(wt);
    }
  }
  return g;
}

template <class Domain>
auto reference_grid(const KernelDescriptor& kernel, int n, const ReferenceOptions& opt = {}) {
  if constexpr (std::is_same_v<Domain, Interval>) {
    return reference_grid_interval(kernel, n, opt);
  } else {
    return reference_grid_sphere(kernel, n, opt);
  }
}

namespace detail {

template <class Domain, class Scalar, class F>
bool try_error_norm(const Expansion<Scalar>& e, const KernelDescriptor& kernel, F& f, int p,
                    const ReferenceOptions& opt, double& out) {
  const auto grid = reference_grid<Domain>(kernel, e.basis.max_degree, opt);
  std::vector<double> terms(grid.size());
  std::vector<double> basis(static_cast<std::size_t>(e.coefficients.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& s = grid.samples[i];
    Domain::basis(e.basis.max_degree, point_of(s), basis);
    Scalar approx{};
    for (std::size_t l = 0; l < basis.size(); ++l) approx += e.coefficients(static_cast<Eigen::Index>(l)) * basis[l];
    const auto exact = kernel_value(kernel, s) * f(point_of(s));
    const double diff = std::abs(std::complex<double>(approx) - exact);
    const double v = grid.weights[i] * (p == 1 ? diff : diff * diff);
    if (!std::isfinite(v)) return false;
    terms[i] = v;
  }
  const double total = pairwise_sum(terms);
  out = p == 1 ? total : std::sqrt(total);
  return true;
}

} // namespace detail

// ||approx - K f||_p, p in {1, 2}, by reference quadrature. A non-finite
// integrand triggers one retry on a regraded grid before failing.
template <class Domain, class Scalar, class F>
double error_norm(const Expansion<Scalar>& e, const KernelDescriptor& kernel, F&& f, int p,
                  const ReferenceOptions& opt = {}) {
  if (p != 1 && p != 2) throw DomainError("error_norm: p must be 1 or 2");
  double out = 0.0;
  if (detail::try_error_norm<Domain>(e, kernel, f, p, opt, out)) return out;
  ReferenceOptions retry = opt;
  retry.density *= 1.37;
  if (detail::try_error_norm<Domain>(e, kernel, f, p, retry, out)) return out;
  throw NumericalError("error_norm", "non-finite integrand at a reference node");
}

// ||g||_p of a plain function on the region, with the grid of `kernel`.
template <class Domain, class G>
double function_norm(G&& g, const KernelDescriptor& kernel, int n, int p, const ReferenceOptions& opt = {}) {
  const auto grid = reference_grid<Domain>(kernel, n, opt);
  std::vector<double> terms(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = std::abs(g(grid.samples[i]));
    terms[i] = grid.weights[i] * (p == 1 ? a : a * a);
  }
  const double total = pairwise_sum(terms);
  return p == 1 ? total : std::sqrt(total);
}

// P_n(K f) with coefficients int K f p_l domega by the reference quadrature;
// `oversample` scales the grid density.
template <class Domain, class Scalar, class F>
Expansion<Scalar> orthogonal_projection_reference(const KernelDescriptor& kernel, F&& f, int n, double oversample = 1.0) {
  detail::require_scalar_for<Scalar>(kernel, "orthogonal_projection_reference");
  ReferenceOptions opt;
  opt.density = oversample;
  const auto grid = reference_grid<Domain>(kernel, n, opt);
  const auto d = Domain::dim(n);
  std::vector<Scalar> acc(d, Scalar{});
  std::vector<double> p(d);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& s = grid.samples[i];
    const Scalar kf = to_scalar<Scalar>(kernel_value(kernel, s)) * (grid.weights[i] * f(point_of(s)));
    if (!std::isfinite(std::abs(kf))) throw NumericalError("orthogonal_projection_reference", "non-finite integrand");
    Domain::basis(n, point_of(s), p);
    for (std::size_t l = 0; l < d; ++l) acc[l] += kf * p[l];
  }
  Expansion<Scalar> e{Domain::basis_set(n), {}, Provenance::projection, false};
  e.coefficients = Eigen::Map<typename Expansion<Scalar>::Vector>(acc.data(), static_cast<Eigen::Index>(d));
  return e;
}

} // namespace hyperapprox
