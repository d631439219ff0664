#pragma once

// Quick invariant suite behind `hyperapprox selftest`.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "../connection.hpp"
#include "../hyperinterp.hpp"
#include "../moments.hpp"
#include "../quadrature.hpp"
#include "invariants.hpp"

namespace hyperapprox::analysis {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;     // measured defect
  double tolerance = 0.0;
};

inline std::vector<CheckResult> run_selftest() {
  std::vector<CheckResult> out;
  auto check = [&](std::string name, double tol, const std::function<double()>& f) {
    CheckResult r{std::move(name), false, 0.0, tol};
    try {
      r.value = f();
      r.passed = r.value <= tol;
    } catch (const std::exception&) {
      r.value = std::numeric_limits<double>::infinity();
    }
    out.push_back(r);
  };
  const SphericalPoint xi(std::sqrt(0.5), std::sqrt(0.5), 0.0);

  check("gauss_legendre exactness, m <= 80", 1e-12, [] {
    double worst = 0.0;
    for (int m = 1; m <= 80; ++m) {
      const auto r = gauss_legendre(m);
      worst = std::max(worst, verify_exactness(r, 2 * m - 1));
    }
    return worst;
  });
  check("sphere product rule Gram, degree 20", 1e-10, [] { return verify_exactness(sphere_product_rule(40), 40); });
  check("eta vanishes at exactness 2n", 1e-10, [] {
    return std::max(estimate_mz_eta(gauss_legendre(31), 30).eta, estimate_mz_eta(sphere_product_rule(24), 12).eta);
  });
  check("oscillatory moments vs oracle, kappa = 160", 1e-8, [] {
    const auto mv = moments_oscillatory_interval(160.0, 360);
    double worst = 0.0;
    for (int r : {0, 1, 80, 159, 160, 161, 250, 360}) {
      worst = std::max(worst, std::abs(mv.values[static_cast<std::size_t>(r)] - oracle_moment(kernels::IntervalOscillatory{160.0}, static_cast<std::size_t>(r))));
    }
    return worst;
  });
  check("sphere log moments vs oracle", 1e-8, [&] {
    const KernelDescriptor k = kernels::SphereLog{xi};
    const auto mv = moments_sphere_log(xi, 12);
    double worst = 0.0;
    for (std::size_t s : {0ul, 3ul, 20ul, 100ul, 168ul}) {
      worst = std::max(worst, std::abs(mv.values[s] - oracle_moment(k, s, 1e-10, Region::sphere()).real()));
    }
    return worst;
  });
  check("alpha factored = direct, sphere n = 3", 1e-12, [&] {
    const auto mv = moments_sphere_algebraic(xi, -0.5, 6);
    return (assemble_alpha<Sphere>(3, mv).entries - assemble_alpha_direct<Sphere>(3, mv).entries).cwiseAbs().maxCoeff();
  });
  check("K = 1 collapse, interval", 1e-12, [] {
    return unit_collapse_defect<Interval>([](double x) { return std::exp(-x * x); }, gauss_legendre(20), 15);
  });
  check("K = 1 collapse, sphere", 1e-12, [] {
    return unit_collapse_defect<Sphere>([](const SphericalPoint& p) { return std::exp(p.x + p.y + p.z); },
                                        sphere_product_rule(16), 10);
  });
  check("S_n(K chi) = P_n(K chi), interval algebraic", 1e-8, [] {
    return lemma_exactness_defect<Interval, double>(kernels::IntervalAlgebraicLeft{-1.0 / 3.0}, 10, 6, 5, 7u);
  });
  check("S_n(K chi) = P_n(K chi), sphere log", 1e-8, [&] {
    return lemma_exactness_defect<Sphere, double>(kernels::SphereLog{xi}, 6, 3, 3, 11u);
  });
  check("least squares property, oscillatory", 0.0, [] {
    const auto rep = least_squares_check<Interval, std::complex<double>>(
        kernels::IntervalOscillatory{20.0}, [](double x) { return 1.0 / (1.2 - x * x); }, gauss_legendre(12), 16, 20, 3u);
    return static_cast<double>(rep.violations);
  });
  return out;
}

} // namespace hyperapprox::analysis
