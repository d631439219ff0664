#pragma once

// Modified moments beta_r = int K q_r domega of each kernel against the
// auxiliary family: Chebyshev T_r on [-1,1], orthonormal real spherical
// harmonics on the sphere. Also an independent adaptive-quadrature oracle.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "adaptive.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "orthopoly.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace hyperapprox {

template <class Scalar>
struct MomentVector {
  KernelDescriptor kernel;
  BasisSet basis; // the q family; values[i] pairs with T_i or the harmonic in slot i
  std::vector<Scalar> values;

  std::size_t size() const noexcept { return values.size(); }
};

// ---------------------------------------------------------------------------
// Interval, K = e^{i kappa x}.
//
// Integrating 2 T_r = [T_{r+1}/(r+1) - T_{r-1}/(r-1)]' by parts gives, for r >= 2,
//   (i kappa/(r+1)) b_{r+1} + 2 b_r - (i kappa/(r-1)) b_{r-1} = -2 B_{r+1}/(r^2-1),
// with B_s = e^{i kappa} - (-1)^s e^{-i kappa}. The recurrence is run forward
// while r <= ceil(kappa); beyond that the forward direction is unstable and
// the remaining moments are the minimal solution of a tridiagonal
// boundary-value problem (Oliver's method) closed far enough out that the
// truncation is invisible.
inline MomentVector<std::complex<double>> moments_oscillatory_interval(double kappa, int max_r) {
  using C = std::complex<double>;
  if (!std::isfinite(kappa) || !(kappa > 0.0)) throw DomainError("moments_oscillatory_interval: kappa must be finite and positive");
  if (max_r < 0) throw DomainError("moments_oscillatory_interval: negative maximum degree");
  const C I(0.0, 1.0);
  const double s = std::sin(kappa), c = std::cos(kappa);
  auto boundary = [&](int deg) { return deg % 2 == 0 ? C(0.0, 2.0 * s) : C(2.0 * c, 0.0); };
  auto rhs = [&](int r) { return -2.0 * boundary(r + 1) / (static_cast<double>(r) * r - 1.0); };

  MomentVector<C> mv{kernels::IntervalOscillatory{kappa}, {Region::interval(), BasisFamily::chebyshev, max_r}, {}};
  auto& beta = mv.values;
  beta.assign(static_cast<std::size_t>(max_r) + 1, C{});
  beta[0] = 2.0 * s / kappa;
  if (max_r == 0) return mv;

  if (kappa < 1.0) {
    // (i/kappa)(2 sin(k)/k - 2 cos(k)) by its series; the closed form cancels
    double sum = 0.0, term = 1.0;
    for (int j = 1; j < 30; ++j) {
      term *= kappa * kappa / ((2.0 * j) * (2.0 * j + 1.0));
      sum += (j % 2 == 1 ? 1.0 : -1.0) * 2.0 * j * term;
    }
    beta[1] = C(0.0, 2.0 * sum / kappa);
  } else {
    beta[1] = I * (beta[0] - 2.0 * c) / kappa;
  }

  const int r0 = std::max(1, static_cast<int>(std::ceil(kappa)));
  const int forward_end = std::min(max_r, r0);
  for (int r = 1; r < forward_end; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    if (r == 1) {
      beta[2] = (boundary(2) - 4.0 * beta[1]) / (I * kappa);
    } else {
      beta[ru + 1] = (r + 1.0) / (I * kappa) * (rhs(r) - 2.0 * beta[ru] + I * kappa * beta[ru - 1] / (r - 1.0));
    }
  }
  if (max_r <= r0) return mv;

  // close the boundary-value problem once the dominant homogeneous solution
  // has grown by e^80 past max_r
  int n_end = max_r;
  double growth = 0.0;
  while (growth < 80.0) {
    ++n_end;
    const double q = n_end / kappa;
    growth += std::log(q + std::sqrt(std::max(0.0, q * q - 1.0)));
  }
  const int unknowns = n_end - r0 - 1;
  std::vector<C> cp(static_cast<std::size_t>(unknowns)), dp(static_cast<std::size_t>(unknowns));
  for (int i = 0; i < unknowns; ++i) {
    const int r = r0 + 1 + i;
    const C lower = -I * kappa / (r - 1.0);
    const C upper = I * kappa / (r + 1.0);
    C d = rhs(r);
    if (i == 0) d -= lower * beta[static_cast<std::size_t>(r0)];
    // beta at n_end is taken as zero
    const auto iu = static_cast<std::size_t>(i);
    if (i == 0) {
      cp[iu] = upper / 2.0;
      dp[iu] = d / 2.0;
    } else {
      const C den = 2.0 - lower * cp[iu - 1];
      cp[iu] = upper / den;
      dp[iu] = (d - lower * dp[iu - 1]) / den;
    }
  }
  std::vector<C> x(static_cast<std::size_t>(unknowns));
  for (int i = unknowns - 1; i >= 0; --i) {
    const auto iu = static_cast<std::size_t>(i);
    x[iu] = dp[iu] - (i + 1 < unknowns ? cp[iu] * x[iu + 1] : C{});
  }
  for (int r = r0 + 1; r <= max_r; ++r) beta[static_cast<std::size_t>(r)] = x[static_cast<std::size_t>(r - r0 - 1)];
  return mv;
}

// ---------------------------------------------------------------------------
// Interval, algebraic endpoint singularities and the Chebyshev weight.

namespace detail {

// int_{-1}^{1} (1 -+ x)^a T_r(x) dx with the singular endpoint at x = +-1.
// For a < 0 the substitution u = y^{1+a}, y the distance to the endpoint,
// turns (y^a dy) into du/(1+a) and leaves a bounded integrand.
inline double endpoint_algebraic_moment(double a, bool left, int r) {
  const double sign = (left && r % 2 == 1) ? -1.0 : 1.0;
  // T_r at distance y from the endpoint: cos(r phi), y = 2 sin^2(phi/2)
  auto cheb_at = [r](double y) {
    const double h = std::sqrt(std::clamp(0.5 * y, 0.0, 1.0));
    return std::cos(r * 2.0 * std::asin(h));
  };
  AdaptiveOptions opts;
  opts.initial_panels = r + 2;
  AdaptiveResult<double> res;
  if (a < 0.0) {
    const double p = 1.0 / (1.0 + a);
    opts.abs_tol = 1e-13 * (1.0 + a);
    res = integrate_adaptive([&](double u) { return cheb_at(std::pow(u, p)); }, 0.0, std::pow(2.0, 1.0 + a), opts);
    res.value *= p;
  } else {
    // smooth enough in the angle variable: y = 1 - cos(theta)
    opts.abs_tol = 1e-13;
    res = integrate_adaptive(
        [&](double th) {
          const double y = 2.0 * std::sin(0.5 * th) * std::sin(0.5 * th);
          return std::pow(y, a) * std::cos(r * th) * std::sin(th);
        },
        0.0, std::numbers::pi, opts);
  }
  if (!res.converged) throw NumericalError("moments_algebraic_interval", "adaptive quadrature did not converge");
  return sign * res.value;
}

} // namespace detail

inline MomentVector<double> moments_algebraic_interval(const KernelDescriptor& kernel, int max_r) {
  validate(kernel);
  if (max_r < 0) throw DomainError("moments_algebraic_interval: negative maximum degree");
  MomentVector<double> mv{kernel, {Region::interval(), BasisFamily::chebyshev, max_r},
                          std::vector<double>(static_cast<std::size_t>(max_r) + 1, 0.0)};
  if (std::holds_alternative<kernels::IntervalChebyshevWeight>(kernel)) {
    mv.values[0] = std::numbers::pi;
    return mv;
  }
  double a;
  bool left;
  if (auto* l = std::get_if<kernels::IntervalAlgebraicLeft>(&kernel)) {
    a = l->a;
    left = true;
  } else if (auto* rk = std::get_if<kernels::IntervalAlgebraicRight>(&kernel)) {
    a = rk->a;
    left = false;
  } else {
    throw DomainError("moments_algebraic_interval: not an algebraic interval kernel");
  }
  for (int r = 0; r <= max_r; ++r) mv.values[static_cast<std::size_t>(r)] = detail::endpoint_algebraic_moment(a, left, r);
  return mv;
}

// K = 1: int T_r dx = 2/(1-r^2) for even r, 0 for odd r; on the sphere
// int Y_{l,k} domega = sqrt(4 pi) delta_{l0}.
inline MomentVector<double> moments_unit(Region region, int max_degree) {
  if (max_degree < 0) throw DomainError("moments_unit: negative maximum degree");
  if (region.kind == RegionKind::interval) {
    MomentVector<double> mv{kernels::Unit{}, {region, BasisFamily::chebyshev, max_degree},
                            std::vector<double>(static_cast<std::size_t>(max_degree) + 1, 0.0)};
    for (int r = 0; r <= max_degree; r += 2) mv.values[static_cast<std::size_t>(r)] = 2.0 / (1.0 - static_cast<double>(r) * r);
    return mv;
  }
  MomentVector<double> mv{kernels::Unit{}, {region, BasisFamily::spherical_harmonic, max_degree},
                          std::vector<double>(sphere_dim(max_degree), 0.0)};
  mv.values[0] = std::sqrt(4.0 * std::numbers::pi);
  return mv;
}

// ---------------------------------------------------------------------------
// Sphere.

inline MomentVector<double> moments_sphere_harmonic(int lbar, int kbar, int max_l) {
  if (lbar < 0 || kbar < -lbar || kbar > lbar) throw IndexError("moments_sphere_harmonic: need |kbar| <= lbar");
  if (lbar > max_l) throw IndexError("moments_sphere_harmonic: lbar exceeds the moment degree");
  MomentVector<double> mv{kernels::SphereHarmonic{lbar, kbar}, {Region::sphere(), BasisFamily::spherical_harmonic, max_l},
                          std::vector<double>(sphere_dim(max_l), 0.0)};
  mv.values[harmonic_slot(lbar, kbar)] = 1.0;
  return mv;
}

namespace detail {

// Zonal kernel g(xi . x): beta_{l,k} = factor[l] * Y_{l,k}(xi).
inline std::vector<double> zonal_moments(const SphericalPoint& xi, const std::vector<double>& factor, int max_l) {
  std::vector<double> y(sphere_dim(max_l));
  spherical_harmonics_all(max_l, xi, y);
  for (int l = 0; l <= max_l; ++l) {
    for (int k = -l; k <= l; ++k) y[harmonic_slot(l, k)] *= factor[static_cast<std::size_t>(l)];
  }
  return y;
}

} // namespace detail

// K = |xi - x|^nu:
//   beta_{l,k} = 2^{nu+2} pi (-nu/2)_l Gamma((nu+2)/2) / Gamma(l + nu/2 + 2) Y_{l,k}(xi).
inline MomentVector<double> moments_sphere_algebraic(const SphericalPoint& xi, double nu, int max_l) {
  if (!(nu > -1.0)) throw DomainError("moments_sphere_algebraic: nu must exceed -1");
  if (max_l < 0) throw DomainError("moments_sphere_algebraic: negative maximum degree");
  std::vector<double> factor(static_cast<std::size_t>(max_l) + 1);
  const double lead = std::pow(2.0, nu + 2.0) * std::numbers::pi * special::gamma(0.5 * nu + 1.0);
  for (int l = 0; l <= max_l; ++l) {
    factor[static_cast<std::size_t>(l)] = lead * special::pochhammer_over_gamma(-0.5 * nu, l, 0.5 * nu + 2.0);
  }
  return {kernels::SphereAlgebraic{xi, nu}, {Region::sphere(), BasisFamily::spherical_harmonic, max_l},
          detail::zonal_moments(xi, factor, max_l)};
}

// int_{-1}^{1} log(1-t) P_l(t) dt, by adaptive quadrature after u = 1 - t = v^2.
inline double log_legendre_integral(int l) {
  if (l < 0) throw IndexError("log_legendre_integral: negative degree");
  AdaptiveOptions opts;
  opts.abs_tol = 1e-13;
  opts.initial_panels = l + 2;
  auto res = integrate_adaptive(
      [l](double v) {
        if (v == 0.0) return 0.0;
        return 4.0 * v * std::log(v) * legendre(l, std::clamp(1.0 - v * v, -1.0, 1.0));
      },
      0.0, std::numbers::sqrt2, opts);
  if (!res.converged) throw NumericalError("moments_sphere_log", "adaptive quadrature did not converge");
  return res.value;
}

// Funk-Hecke factor pi * int log(1-t) P_l(t) dt as displayed for the
// logarithmic kernel. It integrates (1/2) log(1 - xi.x), which differs from
// log|xi - x| = (1/2) log(2 (1 - xi.x)) by the constant (1/2) log 2.
inline std::vector<double> sphere_log_displayed_factors(int max_l) {
  std::vector<double> f(static_cast<std::size_t>(max_l) + 1);
  for (int l = 0; l <= max_l; ++l) f[static_cast<std::size_t>(l)] = std::numbers::pi * log_legendre_integral(l);
  return f;
}

// K = log|xi - x|. The displayed factors plus the constant term
// (1/2) log 2 * int Y_{0,0} = 2 pi log 2 at degree zero.
inline MomentVector<double> moments_sphere_log(const SphericalPoint& xi, int max_l) {
  if (max_l < 0) throw DomainError("moments_sphere_log: negative maximum degree");
  auto factor = sphere_log_displayed_factors(max_l);
  factor[0] += 2.0 * std::numbers::pi * std::numbers::ln2;
  return {kernels::SphereLog{xi}, {Region::sphere(), BasisFamily::spherical_harmonic, max_l},
          detail::zonal_moments(xi, factor, max_l)};
}

// int_{-1}^{1} (1-t)^alpha (1+t)^beta P_l(t) dt for l = 0..max_l by
// Gauss-Jacobi quadrature; exact up to roundoff since P_l is a polynomial.
inline std::vector<double> jacobi_legendre_integrals(double alpha, double beta, int max_l) {
  const int m = (max_l + 1) / 2 + 5;
  const auto gj = gauss_jacobi(m, alpha, beta);
  std::vector<double> out(static_cast<std::size_t>(max_l) + 1, 0.0);
  for (std::size_t j = 0; j < gj.nodes.size(); ++j) {
    const double t = gj.nodes[j];
    double p0 = 1.0, p1 = t;
    out[0] += gj.weights[j];
    if (max_l >= 1) out[1] += gj.weights[j] * t;
    for (int l = 2; l <= max_l; ++l) {
      const double p2 = ((2.0 * l - 1.0) * t * p1 - (l - 1.0) * p0) / l;
      p0 = p1;
      p1 = p2;
      out[static_cast<std::size_t>(l)] += gj.weights[j] * p2;
    }
  }
  return out;
}

// K = |xi - x|^nu1 |xi + x|^nu2:
//   beta_{l,k} = 2^{(nu1+nu2)/2} 2 pi int (1-t)^{nu1/2} (1+t)^{nu2/2} P_l(t) dt Y_{l,k}(xi).
// The Legendre form is integrated directly; expanding P_l by the Rodrigues
// formula first loses all accuracy to the l! growth of the derivative.
inline MomentVector<double> moments_sphere_double_algebraic(const SphericalPoint& xi, double nu1, double nu2, int max_l) {
  if (!(nu1 > -1.0) || !(nu2 > -1.0)) throw DomainError("moments_sphere_double_algebraic: nu1, nu2 must exceed -1");
  if (max_l < 0) throw DomainError("moments_sphere_double_algebraic: negative maximum degree");
  auto factor = jacobi_legendre_integrals(0.5 * nu1, 0.5 * nu2, max_l);
  const double lead = std::pow(2.0, 0.5 * (nu1 + nu2)) * 2.0 * std::numbers::pi;
  for (auto& f : factor) f *= lead;
  return {kernels::SphereDoubleAlgebraic{xi, nu1, nu2}, {Region::sphere(), BasisFamily::spherical_harmonic, max_l},
          detail::zonal_moments(xi, factor, max_l)};
}

// ---------------------------------------------------------------------------

// Moments of any kernel up to Chebyshev degree / harmonic degree max_degree.
// `region` only matters for the unit kernel.
template <class Scalar>
MomentVector<Scalar> compute_moments(const KernelDescriptor& kernel, int max_degree, Region region) {
  validate(kernel);
  auto widen = [](MomentVector<double>&& mv) {
    if constexpr (std::is_same_v<Scalar, double>) {
      return std::move(mv);
    } else {
      MomentVector<Scalar> out{mv.kernel, mv.basis, std::vector<Scalar>(mv.values.begin(), mv.values.end())};
      return out;
    }
  };
  return std::visit(
      overloaded{
          [&](const kernels::IntervalOscillatory& o) -> MomentVector<Scalar> {
            if constexpr (std::is_same_v<Scalar, double>) {
              throw DomainError("compute_moments: complex kernel requested with real scalars");
            } else {
              return moments_oscillatory_interval(o.kappa, max_degree);
            }
          },
          [&](const kernels::SphereHarmonic& o) -> MomentVector<Scalar> {
            return widen(moments_sphere_harmonic(o.lbar, o.kbar, max_degree));
          },
          [&](const kernels::SphereAlgebraic& o) -> MomentVector<Scalar> {
            return widen(moments_sphere_algebraic(o.xi, o.nu, max_degree));
          },
          [&](const kernels::SphereLog& o) -> MomentVector<Scalar> { return widen(moments_sphere_log(o.xi, max_degree)); },
          [&](const kernels::SphereDoubleAlgebraic& o) -> MomentVector<Scalar> {
            return widen(moments_sphere_double_algebraic(o.xi, o.nu1, o.nu2, max_degree));
          },
          [&](const kernels::Unit&) -> MomentVector<Scalar> { return widen(moments_unit(region, max_degree)); },
          [&](const auto&) -> MomentVector<Scalar> { return widen(moments_algebraic_interval(kernel, max_degree)); },
      },
      kernel);
}

// ---------------------------------------------------------------------------
// Verification oracle: direct quadrature of int K q domega, independent of the
// recurrences and closed forms above. Interval integrals are taken in the
// angle variable x = cos(theta); sphere integrals of zonal kernels in a frame
// with the singularity at the north pole, the longitude integral by the
// trapezoidal rule (exact for the trigonometric polynomial it sees). Panels
// touching a singular endpoint use tanh-sinh, the rest adaptive
// Gauss-Kronrod. `index` is the Chebyshev degree or the harmonic slot.

namespace detail {

class CountedBudget {
public:
  explicit CountedBudget(long limit) : limit_(limit) {}
  void tick() {
    if (++count_ > limit_) throw NumericalError("oracle_moment", "evaluation budget of 1e6 exhausted");
  }

private:
  long limit_;
  long count_ = 0;
};

template <class G>
double oracle_theta_integral(G&& g_raw, int panels, bool singular_lo, bool singular_hi, double tol) {
  namespace bq = boost::math::quadrature;
  // tanh-sinh samples down to the underflow threshold, where the endpoint
  // distance itself underflows; the integrable tail there is far below tol
  auto g = [&](double th) {
    const double v = g_raw(th);
    if (std::isfinite(v)) return v;
    if (std::min(th, std::numbers::pi - th) < 1e-100) return 0.0;
    throw NumericalError("oracle_moment", "non-finite integrand away from the endpoints");
  };
  const double h = std::numbers::pi / panels;
  double total = 0.0, err_total = 0.0;
  bq::tanh_sinh<double> ts;
  for (int i = 0; i < panels; ++i) {
    const double a = h * i, b = (i + 1 == panels) ? std::numbers::pi : h * (i + 1);
    double err = 0.0, value;
    if ((i == 0 && singular_lo) || (i + 1 == panels && singular_hi)) {
      double l1 = 0.0;
      std::size_t levels = 0;
      value = ts.integrate(g, a, b, 1e-14, &err, &l1, &levels);
    } else {
      value = bq::gauss_kronrod<double, 61>::integrate(g, a, b, 0, 0.0, &err);
      if (err > 0.1 * tol / panels) value = bq::gauss_kronrod<double, 61>::integrate(g, a, b, 12, 1e-12, &err);
    }
    total += value;
    err_total += err;
  }
  if (err_total > tol) throw NumericalError("oracle_moment", "quadrature did not reach the requested tolerance");
  return total;
}

} // namespace detail

inline std::complex<double> oracle_moment(const KernelDescriptor& kernel, std::size_t index, double tol = 1e-10,
                                          Region region = Region::interval()) {
  validate(kernel);
  detail::CountedBudget budget(1'000'000);
  const auto kr = kernel_region(kernel).value_or(region.kind);

  if (kr == RegionKind::interval) {
    const int r = static_cast<int>(index);
    const int panels = std::max(4, static_cast<int>(std::ceil(
                                       (r + (is_complex(kernel) ? std::get<kernels::IntervalOscillatory>(kernel).kappa : 0.0)) / 2.0)) + 2);
    auto sample = [](double th) {
      const double sh = std::sin(0.5 * th), ch = std::cos(0.5 * th);
      return IntervalSample{std::cos(th), 2.0 * ch * ch, 2.0 * sh * sh};
    };
    auto part = [&](bool imag) {
      return detail::oracle_theta_integral(
          [&](double th) {
            budget.tick();
            const auto kv = kernel_value(kernel, sample(th));
            return (imag ? kv.imag() : kv.real()) * std::cos(r * th) * std::sin(th);
          },
          panels, singular_at_right(kernel), singular_at_left(kernel), tol);
    };
    const double re = part(false);
    const double im = is_complex(kernel) ? part(true) : 0.0;
    return {re, im};
  }

  const auto [l, k] = degree_order(index + 1);
  const auto xi = sphere_singularity(kernel);
  if (!xi) {
    // polynomial kernel: an exact product rule suffices
    int lbar = 0;
    if (auto* h = std::get_if<kernels::SphereHarmonic>(&kernel)) lbar = h->lbar;
    const auto rule = sphere_product_rule(lbar + l + 2);
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      budget.tick();
      sum += rule.weights[j] * kernel_value(kernel, rule.points[j]).real() * spherical_harmonic(l, k, rule.points[j]);
    }
    return {sum, 0.0};
  }
  const RotatedFrame frame(*xi);
  const int nphi = 2 * l + 4;
  const bool anti_singular = [&] {
    if (auto* d = std::get_if<kernels::SphereDoubleAlgebraic>(&kernel)) return d->nu2 < 0.0;
    return false;
  }();
  const double value = detail::oracle_theta_integral(
      [&](double th) {
        budget.tick();
        const double sh = std::sin(0.5 * th), ch = std::cos(0.5 * th);
        SphereSample s{frame.to_ambient(th, 0.0), 2.0 * sh, 2.0 * ch};
        const double kv = kernel_value(kernel, s).real();
        double ring = 0.0;
        for (int j = 0; j < nphi; ++j) {
          ring += spherical_harmonic(l, k, frame.to_ambient(th, 2.0 * std::numbers::pi * j / nphi));
        }
        return kv * ring * (2.0 * std::numbers::pi / nphi) * std::sin(th);
      },
      std::max(4, l / 2 + 2), true, anti_singular, tol);
  return {value, 0.0};
}

} // namespace hyperapprox
