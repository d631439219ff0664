#include <gtest/gtest.h>

#include <hyperapprox.hpp>

#include "oracles.hpp"

using namespace hyperapprox;

TEST(Legendre, NormalizedConstantAndEndpoint) {
  EXPECT_NEAR(legendre_normalized(0, 0.37), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(legendre_normalized(1, 1.0), 1.224744871391589, 1e-15);
}

TEST(Legendre, MatchesExplicitSum) {
  for (int l = 0; l <= 12; ++l) {
    for (double x : {-1.0, -0.73, -0.1, 0.0, 0.3, 0.91, 1.0}) {
      EXPECT_NEAR(legendre(l, x), oracle::legendre_explicit(l, x), 1e-12) << "l=" << l << " x=" << x;
    }
  }
  EXPECT_NEAR(legendre_normalized(5, 0.3), std::sqrt(5.5) * oracle::legendre_explicit(5, 0.3), 1e-14);
}

TEST(Legendre, HighDegreeAgainstStd) {
  for (int l : {50, 120, 240}) {
    for (double x : {-0.999, -0.5, 0.123, 0.77}) {
      EXPECT_NEAR(legendre_normalized(l, x), oracle::legendre_normalized(l, x), 1e-11 * std::sqrt(l));
    }
  }
}

TEST(Legendre, AllMatchesSingle) {
  std::vector<double> v(31);
  legendre_normalized_all(30, -0.42, v);
  for (int l = 0; l <= 30; ++l) EXPECT_NEAR(v[l], legendre_normalized(l, -0.42), 1e-14);
}

TEST(Legendre, RejectsOutsideInterval) {
  EXPECT_THROW(legendre(3, 1.01), DomainError);
  EXPECT_THROW(chebyshev(3, -1.5), DomainError);
}

TEST(Chebyshev, Values) {
  EXPECT_DOUBLE_EQ(chebyshev(0, 0.7), 1.0);
  EXPECT_NEAR(chebyshev(2, 0.5), -0.5, 1e-16);
  EXPECT_NEAR(chebyshev(7, -0.3), std::cos(7 * std::acos(-0.3)), 1e-14);
  std::vector<double> v(361);
  chebyshev_all(360, 0.2, v);
  for (int r : {0, 1, 17, 200, 360}) EXPECT_NEAR(v[r], oracle::chebyshev(r, 0.2), 1e-12);
}

TEST(Harmonic, ConstantTerm) {
  const SphericalPoint p(0.6, 0.8, 0.0);
  EXPECT_NEAR(spherical_harmonic(0, 0, p), 0.28209479177387814, 1e-15);
}

TEST(Harmonic, MatchesAssocLegendre) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracle::random_point(rng);
    std::vector<double> all(sphere_dim(15));
    spherical_harmonics_all(15, p, all);
    for (int l = 0; l <= 15; ++l) {
      for (int k = -l; k <= l; ++k) {
        EXPECT_NEAR(all[harmonic_slot(l, k)], oracle::harmonic(l, k, p), 1e-12) << l << "," << k;
      }
    }
  }
}

TEST(Harmonic, LowDegreeCartesian) {
  const auto p = SphericalPoint::normalized(0.3, -0.4, 0.5);
  const double c = std::sqrt(3.0 / (4.0 * std::numbers::pi));
  EXPECT_NEAR(spherical_harmonic(1, 0, p), c * p.z, 1e-15);
  EXPECT_NEAR(spherical_harmonic(1, 1, p), c * p.x, 1e-15);
  EXPECT_NEAR(spherical_harmonic(1, -1, p), c * p.y, 1e-15);
}

TEST(Harmonic, AdditionTheorem) {
  const SphericalPoint p(0.6, 0.8, 0.0);
  for (int l : {1, 5, 12, 40}) {
    std::vector<double> all(sphere_dim(l));
    spherical_harmonics_all(l, p, all);
    double s = 0.0;
    for (int k = -l; k <= l; ++k) s += all[harmonic_slot(l, k)] * all[harmonic_slot(l, k)];
    EXPECT_NEAR(s, (2.0 * l + 1.0) / (4.0 * std::numbers::pi), 1e-12);
  }
  // the two-point form against P_l(p.q)
  std::mt19937_64 rng(11);
  const auto q = oracle::random_point(rng);
  const int l = 9;
  std::vector<double> a(sphere_dim(l)), b(sphere_dim(l));
  spherical_harmonics_all(l, p, a);
  spherical_harmonics_all(l, q, b);
  double s = 0.0;
  for (int k = -l; k <= l; ++k) s += a[harmonic_slot(l, k)] * b[harmonic_slot(l, k)];
  EXPECT_NEAR(s, (2.0 * l + 1.0) / (4.0 * std::numbers::pi) * std::legendre(l, p.dot(q)), 1e-13);
}

TEST(Harmonic, GramIdentityUnderExactRule) {
  const auto rule = sphere_product_rule(20);
  const auto b = basis_matrix<Sphere>(10, std::span<const SphericalPoint>(rule.points));
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
  const Eigen::MatrixXd g = b.transpose() * w.asDiagonal() * b;
  EXPECT_LT((g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Harmonic, PolesAreFinite) {
  std::vector<double> all(sphere_dim(30));
  for (double z : {1.0, -1.0}) {
    spherical_harmonics_all(30, SphericalPoint(0.0, 0.0, z), all);
    for (int l = 0; l <= 30; ++l) {
      for (int k = -l; k <= l; ++k) {
        const double v = all[harmonic_slot(l, k)];
        if (k == 0) EXPECT_NEAR(v, std::sqrt((2.0 * l + 1) / (4 * std::numbers::pi)) * std::pow(z, l), 1e-12);
        else EXPECT_EQ(v, 0.0);
      }
    }
  }
}

TEST(Indexing, FlatIndex) {
  EXPECT_EQ(flat_index(0, 0), 1u);
  EXPECT_EQ(flat_index(1, -1), 2u);
  EXPECT_EQ(flat_index(12, 8), 165u);
  EXPECT_THROW(flat_index(2, 3), IndexError);
  for (std::size_t f = 1; f <= 400; ++f) {
    const auto [l, k] = degree_order(f);
    EXPECT_EQ(flat_index(l, k), f);
  }
  EXPECT_THROW(degree_order(0), IndexError);
}

TEST(SphericalPointTest, RejectsOffSphere) {
  EXPECT_THROW(SphericalPoint(1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(SphericalPoint::normalized(0, 0, 0), DomainError);
  const auto p = SphericalPoint::normalized(2, 0, 0);
  EXPECT_DOUBLE_EQ(p.x, 1.0);
}
