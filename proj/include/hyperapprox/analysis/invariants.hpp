#pragma once

// Computable conclusions of the structural results about S_n: exactness on
// K * polynomials, orthogonality of K L_n f - S_n F to P_n, the least-squares
// property, and the collapse S_n = L_n for K = 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <type_traits>
#include <vector>

#include "../connection.hpp"
#include "../hyperinterp.hpp"
#include "../moments.hpp"
#include "../reference.hpp"

namespace hyperapprox::analysis {

template <class Domain>
Expansion<double> random_polynomial(int degree, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Expansion<double> e{Domain::basis_set(degree), Eigen::VectorXd(static_cast<Eigen::Index>(Domain::dim(degree))),
                      Provenance::projection, false};
  for (Eigen::Index i = 0; i < e.coefficients.size(); ++i) e.coefficients(i) = nd(rng);
  return e;
}

template <class Domain, class Scalar>
AlphaMatrix<Scalar> alpha_for(const KernelDescriptor& k, int n) {
  const auto mv = compute_moments<Scalar>(k, 2 * n, Domain::region());
  return assemble_alpha<Domain>(n, mv);
}

template <class Domain>
QuadratureRule<Domain> rule_with_exactness(int d) {
  if constexpr (std::is_same_v<Domain, Interval>) {
    return gauss_legendre(std::max(1, (d + 2) / 2));
  } else {
    return sphere_product_rule(d, std::numbers::pi / (d + 1));
  }
}

// max over `trials` random chi in P_{n'} of ||S_n(K chi) - P_n(K chi)||_2,
// with a rule of exactness n + n'.
template <class Domain, class Scalar>
double lemma_exactness_defect(const KernelDescriptor& k, int n, int nprime, int trials, unsigned seed) {
  std::mt19937_64 rng(seed);
  const auto alpha = alpha_for<Domain, Scalar>(k, n);
  const auto rule = rule_with_exactness<Domain>(n + nprime);
  const auto ew = efficient_weights(rule, n, alpha);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto chi = random_polynomial<Domain>(nprime, rng);
    auto f = [&](const typename Domain::Point& x) { return evaluate_expansion<Domain>(chi, x); };
    const auto fs = sample(f, rule);
    const auto s = efficient_hyperinterpolation<Domain>(std::span<const double>(fs), ew);
    const auto p = orthogonal_projection_reference<Domain, Scalar>(k, f, n);
    worst = std::max(worst, (s.coefficients - p.coefficients).norm());
  }
  return worst;
}

// max_l |<K L_n f - S_n F, p_l>| with the inner product by reference
// quadrature.
template <class Domain, class Scalar, class F>
double lemma_orthogonality_defect(const KernelDescriptor& k, F&& f, const QuadratureRule<Domain>& rule, int n) {
  const auto alpha = alpha_for<Domain, Scalar>(k, n);
  const auto ew = efficient_weights(rule, n, alpha);
  const auto fs = sample(f, rule);
  const auto s = efficient_hyperinterpolation<Domain>(std::span<const double>(fs), ew);
  const auto lf = classical_hyperinterpolation<Domain, double>(kernels::Unit{}, f, rule, n);
  auto poly = [&](const typename Domain::Point& x) { return evaluate_expansion<Domain>(lf, x); };
  const auto proj = orthogonal_projection_reference<Domain, Scalar>(k, poly, n);
  return (proj.coefficients - s.coefficients).template lpNorm<Eigen::Infinity>();
}

struct LeastSquaresReport {
  int trials = 0;
  int violations = 0;
  double min_gap = 0.0; // min over trials of perturbed - unperturbed distance
};

// ||K L_n f - S_n F||_2 <= ||K L_n f - (S_n F + eps chi)||_2 for random chi
// in P_n and eps in {+-1e-3, +-1e-1}. Distances by reference quadrature.
template <class Domain, class Scalar, class F>
LeastSquaresReport least_squares_check(const KernelDescriptor& k, F&& f, const QuadratureRule<Domain>& rule, int n,
                                       int perturbations, unsigned seed) {
  std::mt19937_64 rng(seed);
  const auto alpha = alpha_for<Domain, Scalar>(k, n);
  const auto ew = efficient_weights(rule, n, alpha);
  const auto fs = sample(f, rule);
  const auto s = efficient_hyperinterpolation<Domain>(std::span<const double>(fs), ew);
  const auto lf = classical_hyperinterpolation<Domain, double>(kernels::Unit{}, f, rule, n);
  const auto grid = reference_grid<Domain>(k, n);

  // column 0: S_n F, column t+1: S_n F + eps_t chi_t
  const auto d = static_cast<Eigen::Index>(Domain::dim(n));
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cols(d, perturbations + 1);
  cols.col(0) = s.coefficients;
  const double eps[] = {1e-3, -1e-3, 1e-1, -1e-1};
  for (int t = 0; t < perturbations; ++t) {
    const auto chi = random_polynomial<Domain>(n, rng);
    cols.col(t + 1) = s.coefficients;
    for (Eigen::Index l = 0; l < d; ++l) cols(l, t + 1) += eps[t % 4] * chi.coefficients(l);
  }

  // squared distances to K L_n f, accumulated per block of grid points and
  // then summed pairwise
  const std::size_t block = 2048;
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(perturbations) + 1);
  std::vector<double> row(static_cast<std::size_t>(d));
  for (std::size_t b0 = 0; b0 < grid.size(); b0 += block) {
    const std::size_t len = std::min(block, grid.size() - b0);
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(len), d);
    std::vector<std::complex<double>> target(len);
    for (std::size_t i = 0; i < len; ++i) {
      const auto& smp = grid.samples[b0 + i];
      Domain::basis(n, point_of(smp), row);
      double lfv = 0.0;
      for (Eigen::Index l = 0; l < d; ++l) {
        basis(static_cast<Eigen::Index>(i), l) = row[static_cast<std::size_t>(l)];
        lfv += lf.coefficients(l) * row[static_cast<std::size_t>(l)];
      }
      target[i] = kernel_value(k, smp) * lfv;
    }
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vals = basis.template cast<Scalar>() * cols;
    for (Eigen::Index c = 0; c < cols.cols(); ++c) {
      double acc = 0.0;
      for (std::size_t i = 0; i < len; ++i) {
        acc += grid.weights[b0 + i] * std::norm(target[i] - std::complex<double>(vals(static_cast<Eigen::Index>(i), c)));
      }
      partial[static_cast<std::size_t>(c)].push_back(acc);
    }
  }
  const double base = std::sqrt(pairwise_sum(partial[0]));
  LeastSquaresReport rep;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (int t = 0; t < perturbations; ++t) {
    const double gap = std::sqrt(pairwise_sum(partial[static_cast<std::size_t>(t) + 1])) - base;
    ++rep.trials;
    if (gap < 0.0) ++rep.violations;
    rep.min_gap = std::min(rep.min_gap, gap);
  }
  return rep;
}

// max |S_n F - L_n F| coefficientwise for K = 1.
template <class Domain, class F>
double unit_collapse_defect(F&& f, const QuadratureRule<Domain>& rule, int n) {
  const auto alpha = alpha_for<Domain, double>(kernels::Unit{}, n);
  const auto ew = efficient_weights(rule, n, alpha);
  const auto fs = sample(f, rule);
  const auto s = efficient_hyperinterpolation<Domain>(std::span<const double>(fs), ew);
  const auto l = classical_hyperinterpolation<Domain, double>(kernels::Unit{}, f, rule, n);
  return (s.coefficients - l.coefficients).template lpNorm<Eigen::Infinity>();
}

} // namespace hyperapprox::analysis
