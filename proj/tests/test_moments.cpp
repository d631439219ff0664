#include <gtest/gtest.h>

#include <hyperapprox.hpp>

#include "oracles.hpp"

using namespace hyperapprox;
using cd = std::complex<double>;

namespace {

const SphericalPoint kXi(std::sqrt(0.5), std::sqrt(0.5), 0.0);

double max_abs(const std::vector<cd>& v) {
  double m = 0.0;
  for (auto z : v) m = std::max(m, std::abs(z));
  return m;
}

// int e^{i kappa x} T_r(x) dx by composite Gauss-Legendre in x
cd oscillatory_brute(double kappa, int r) {
  return oracle::graded_integral([&](double x) { return std::exp(cd(0, kappa * x)) * oracle::chebyshev(r, x); }, -1.0,
                                 1.0, false, false, 400);
}

} // namespace

TEST(OscillatoryMoments, ZerothClosedForm) {
  for (double kappa : {0.01, 0.7, 5.0, 100.0, 160.0}) {
    const auto mv = moments_oscillatory_interval(kappa, 0);
    EXPECT_NEAR(mv.values[0].real(), 2 * std::sin(kappa) / kappa, 1e-15);
    EXPECT_NEAR(mv.values[0].imag(), 0.0, 1e-15);
  }
}

TEST(OscillatoryMoments, FirstAgainstOracle) {
  for (double kappa : {0.3, 3.0, 100.0}) {
    const auto mv = moments_oscillatory_interval(kappa, 1);
    EXPECT_LT(std::abs(mv.values[1] - oracle_moment(kernels::IntervalOscillatory{kappa}, 1)), 1e-12);
    EXPECT_LT(std::abs(mv.values[1] - oscillatory_brute(kappa, 1)), 1e-12);
  }
}

TEST(OscillatoryMoments, FullVectorKappa100) {
  const auto mv = moments_oscillatory_interval(100.0, 240);
  ASSERT_EQ(mv.size(), 241u);
  const double scale = max_abs(mv.values);
  for (int r = 0; r <= 240; r += 7) {
    EXPECT_LT(std::abs(mv.values[r] - oracle_moment(kernels::IntervalOscillatory{100.0}, r)), 1e-10 * scale) << r;
  }
}

TEST(OscillatoryMoments, Kappa160UpTo360) {
  const auto mv = moments_oscillatory_interval(160.0, 360);
  for (int r : {0, 1, 80, 159, 160, 161, 170, 200, 250, 300, 360}) {
    EXPECT_LT(std::abs(mv.values[r] - oscillatory_brute(160.0, r)), 1e-12) << r;
  }
}

TEST(OscillatoryMoments, ParityStructure) {
  // beta_r is real for even r, imaginary for odd r
  const auto mv = moments_oscillatory_interval(37.0, 80);
  for (int r = 0; r <= 80; ++r) {
    EXPECT_EQ(r % 2 ? mv.values[r].real() : mv.values[r].imag(), 0.0);
  }
}

TEST(AlgebraicMoments, ChebyshevWeight) {
  const auto mv = compute_moments<double>(kernels::IntervalChebyshevWeight{}, 12, Region::interval());
  EXPECT_DOUBLE_EQ(mv.values[0], std::numbers::pi);
  for (int r = 1; r <= 12; ++r) EXPECT_EQ(mv.values[r], 0.0);
}

TEST(AlgebraicMoments, ZeroExponentIsUnit) {
  const auto mv = moments_algebraic_interval(kernels::IntervalAlgebraicLeft{0.0}, 20);
  for (int r = 0; r <= 20; ++r) EXPECT_NEAR(mv.values[r], r % 2 ? 0.0 : 2.0 / (1.0 - r * r), 1e-13);
}

TEST(AlgebraicMoments, ClosedFormZeroth) {
  const auto left = moments_algebraic_interval(kernels::IntervalAlgebraicLeft{-1.0 / 3.0}, 0);
  EXPECT_NEAR(left.values[0], 1.5 * std::pow(2.0, 2.0 / 3.0), 1e-13);
  const auto right = moments_algebraic_interval(kernels::IntervalAlgebraicRight{-0.2}, 0);
  EXPECT_NEAR(right.values[0], std::pow(2.0, 0.8) / 0.8, 1e-13);
}

TEST(AlgebraicMoments, AgainstGradedQuadrature) {
  for (double a : {-0.9, -1.0 / 3.0, -0.2, 0.5, 2.5}) {
    const auto l = moments_algebraic_interval(kernels::IntervalAlgebraicLeft{a}, 60);
    const auto r = moments_algebraic_interval(kernels::IntervalAlgebraicRight{a}, 60);
    for (int k : {0, 1, 5, 30, 60}) {
      // x = -1 + y, integrate in y so the endpoint distance is exact
      const double ref = oracle::graded_integral(
          [&](double y) { return std::pow(y, a) * oracle::chebyshev(k, std::clamp(-1.0 + y, -1.0, 1.0)); }, 0.0, 2.0,
          true, false, 200, 500);
      EXPECT_NEAR(l.values[k], ref, 1e-10) << a << " " << k;
      EXPECT_NEAR(r.values[k], (k % 2 ? -1.0 : 1.0) * ref, 1e-10) << a << " " << k;
    }
  }
}

TEST(UnitMoments, Values) {
  const auto iv = moments_unit(Region::interval(), 6);
  EXPECT_DOUBLE_EQ(iv.values[0], 2.0);
  EXPECT_EQ(iv.values[3], 0.0);
  const auto sv = moments_unit(Region::sphere(), 3);
  ASSERT_EQ(sv.size(), 16u);
  EXPECT_NEAR(sv.values[0], std::sqrt(4 * std::numbers::pi), 1e-15);
}

TEST(HarmonicMoments, Delta) {
  // Y_{12,8} has flat index 12^2 + 12 + 8 + 1 = 165
  const auto mv = moments_sphere_harmonic(12, 8, 40);
  ASSERT_EQ(mv.size(), 41u * 41u);
  for (std::size_t i = 0; i < mv.size(); ++i) EXPECT_EQ(mv.values[i], i + 1 == 165 ? 1.0 : 0.0);
  EXPECT_EQ(moments_sphere_harmonic(0, 0, 0).values, std::vector<double>{1.0});
  EXPECT_THROW(moments_sphere_harmonic(12, 8, 11), IndexError);
}

TEST(SphereAlgebraicMoments, ZeroExponent) {
  const auto mv = moments_sphere_algebraic(kXi, 0.0, 10);
  for (std::size_t i = 0; i < mv.size(); ++i) EXPECT_NEAR(mv.values[i], i == 0 ? std::sqrt(4 * std::numbers::pi) : 0.0, 1e-14);
}

TEST(SphereAlgebraicMoments, SquaredDistanceIsPolynomial) {
  const auto mv = moments_sphere_algebraic(kXi, 2.0, 12);
  const auto rule = sphere_product_rule(16);
  for (int l = 0; l <= 12; ++l) {
    for (int k = -l; k <= l; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < rule.size(); ++j) {
        const auto& p = rule.points[j];
        s += rule.weights[j] * (2.0 - 2.0 * kXi.dot(p)) * oracle::harmonic(l, k, p);
      }
      EXPECT_NEAR(mv.values[harmonic_slot(l, k)], s, 1e-10);
    }
  }
}

TEST(SphereAlgebraicMoments, SingularAgainstOracle) {
  const auto mv = moments_sphere_algebraic(kXi, -0.5, 20);
  const KernelDescriptor k = kernels::SphereAlgebraic{kXi, -0.5};
  for (std::size_t s = 0; s < mv.size(); s += 13) EXPECT_NEAR(mv.values[s], oracle_moment(k, s).real(), 1e-8) << s;
}

TEST(SphereAlgebraicMoments, RejectsNonIntegrable) {
  EXPECT_THROW(moments_sphere_algebraic(kXi, -1.0, 4), DomainError);
}

TEST(LogMoments, LegendreIntegrals) {
  EXPECT_NEAR(log_legendre_integral(0), 2 * std::log(2.0) - 2, 1e-13);
  for (int l = 1; l <= 30; ++l) {
    const double ref = oracle::graded_integral([&](double t) { return std::log1p(-t) * std::legendre(l, t); }, -1.0, 1.0,
                                               false, true, 100, 80);
    EXPECT_NEAR(log_legendre_integral(l), -2.0 / (l * (l + 1.0)), 1e-12);
    EXPECT_NEAR(ref, -2.0 / (l * (l + 1.0)), 1e-11);
  }
}

TEST(LogMoments, ZonalAtPole) {
  const auto mv = moments_sphere_log(SphericalPoint(0, 0, 1), 10);
  for (int l = 0; l <= 10; ++l)
    for (int k = -l; k <= l; ++k)
      if (k != 0) EXPECT_EQ(mv.values[harmonic_slot(l, k)], 0.0);
}

TEST(LogMoments, AgainstOracle) {
  const auto mv = moments_sphere_log(kXi, 16);
  const KernelDescriptor k = kernels::SphereLog{kXi};
  for (std::size_t s = 0; s < mv.size(); s += 11) EXPECT_NEAR(mv.values[s], oracle_moment(k, s).real(), 1e-8) << s;
  // degree-zero value in closed form: int log|xi-x| = 4 pi (log 2 - 1/2)
  EXPECT_NEAR(mv.values[0] * std::sqrt(4 * std::numbers::pi), 4 * std::numbers::pi * (std::log(2.0) - 0.5), 1e-12);
}

TEST(DoubleAlgebraicMoments, ZeroExponentsAreUnit) {
  const auto mv = moments_sphere_double_algebraic(kXi, 0.0, 0.0, 8);
  for (std::size_t i = 0; i < mv.size(); ++i) EXPECT_NEAR(mv.values[i], i == 0 ? std::sqrt(4 * std::numbers::pi) : 0.0, 1e-13);
}

TEST(DoubleAlgebraicMoments, JacobiIntegrals) {
  const auto v = jacobi_legendre_integrals(-0.25, -0.25, 30);
  EXPECT_NEAR(v[0], std::sqrt(std::numbers::pi) * std::tgamma(0.75) / std::tgamma(1.25), 1e-13);
  for (int l = 0; l <= 30; ++l) {
    const double ref = oracle::graded_integral(
        [&](double t) { return std::pow(1 - t, -0.25) * std::pow(1 + t, -0.25) * std::legendre(l, t); }, -1.0, 1.0, true,
        true, 100, 200);
    EXPECT_NEAR(v[l], ref, 1e-10) << l;
  }
}

TEST(DoubleAlgebraicMoments, AgainstOracle) {
  const auto mv = moments_sphere_double_algebraic(kXi, -0.5, -0.5, 14);
  const KernelDescriptor k = kernels::SphereDoubleAlgebraic{kXi, -0.5, -0.5};
  for (std::size_t s = 0; s < mv.size(); s += 9) EXPECT_NEAR(mv.values[s], oracle_moment(k, s).real(), 1e-8) << s;
}

TEST(Dispatcher, TypeChecks) {
  EXPECT_THROW(compute_moments<double>(kernels::IntervalOscillatory{1.0}, 4, Region::interval()), DomainError);
  EXPECT_THROW(compute_moments<double>(kernels::IntervalAlgebraicLeft{-1.5}, 4, Region::interval()), DomainError);
  const auto mv = compute_moments<cd>(kernels::IntervalOscillatory{100.0}, 0, Region::interval());
  EXPECT_NEAR(mv.values[0].real(), 2 * std::sin(100.0) / 100.0, 1e-15);
}

TEST(Oracle, TrivialValues) {
  EXPECT_NEAR(oracle_moment(kernels::Unit{}, 0).real(), 2.0, 1e-12);
  EXPECT_NEAR(oracle_moment(kernels::SphereHarmonic{2, 1}, harmonic_slot(2, 1)).real(), 1.0, 1e-10);
}
