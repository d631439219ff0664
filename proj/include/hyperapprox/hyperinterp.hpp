#pragma once

// Classical hyperinterpolation L_n, efficient hyperinterpolation S_n and
// evaluation of the resulting expansions.

#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "connection.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "orthopoly.hpp"
#include "quadrature.hpp"

namespace hyperapprox {

enum class Provenance { classical, efficient, projection };

inline const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::classical: return "classical";
    case Provenance::efficient: return "efficient";
    default: return "projection";
  }
}

template <class Scalar>
struct Expansion {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasisSet basis;
  Vector coefficients;
  Provenance provenance = Provenance::projection;
  bool rank_deficient = false; // built from a rule with m < d_n
};

template <class Domain, class Scalar>
struct EfficientWeights {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const QuadratureRule<Domain>* rule = nullptr; // not owned
  int n = 0;
  Matrix W; // m x d_n
  bool rank_deficient = false;
};

namespace detail {

template <class Scalar>
void require_scalar_for(const KernelDescriptor& k, const char* op) {
  if constexpr (std::is_same_v<Scalar, double>) {
    if (is_complex(k)) throw DomainError(std::string(op) + ": complex kernel requires complex coefficients");
  }
}

} // namespace detail

// W_{jl} = w_j sum_l' p_l'(x_j) alpha_{l'l}.
template <class Domain, class Scalar>
EfficientWeights<Domain, Scalar> efficient_weights(const QuadratureRule<Domain>& rule, int n,
                                                   const AlphaMatrix<Scalar>& alpha) {
  if (alpha.n != n) throw DomainError("efficient_weights: alpha was assembled for a different degree");
  const Eigen::MatrixXd b = basis_matrix<Domain>(n, std::span<const typename Domain::Point>(rule.points));
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
  EfficientWeights<Domain, Scalar> ew;
  ew.rule = &rule;
  ew.n = n;
  ew.rank_deficient = rule.size() < Domain::dim(n);
  const Eigen::MatrixXd wb = w.asDiagonal() * b;
  if constexpr (std::is_same_v<Scalar, double>) {
    ew.W.noalias() = wb * alpha.entries;
  } else {
    ew.W = wb.template cast<Scalar>() * alpha.entries;
  }
  return ew;
}

// Coefficient l of S_n F is sum_j W_{jl} f(x_j); the kernel enters only
// through alpha.
template <class Domain, class Scalar>
Expansion<Scalar> efficient_hyperinterpolation(std::span<const double> f_samples,
                                               const EfficientWeights<Domain, Scalar>& ew) {
  if (f_samples.size() != static_cast<std::size_t>(ew.W.rows())) {
    throw DomainError("efficient_hyperinterpolation: sample count does not match the rule");
  }
  const Eigen::Map<const Eigen::VectorXd> f(f_samples.data(), static_cast<Eigen::Index>(f_samples.size()));
  Expansion<Scalar> e{Domain::basis_set(ew.n), {}, Provenance::efficient, ew.rank_deficient};
  if constexpr (std::is_same_v<Scalar, double>) {
    e.coefficients.noalias() = ew.W.transpose() * f;
  } else {
    e.coefficients = ew.W.transpose() * f.template cast<Scalar>();
  }
  return e;
}

template <class Domain, class F>
std::vector<double> sample(F&& f, const QuadratureRule<Domain>& rule) {
  std::vector<double> out(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) out[j] = f(rule.points[j]);
  return out;
}

// Coefficient l of L_n F is sum_j w_j K(x_j) f(x_j) p_l(x_j). Throws
// NumericalError when a node lies within 1e-14 of a kernel singularity.
template <class Domain, class Scalar, class F>
Expansion<Scalar> classical_hyperinterpolation(const KernelDescriptor& kernel, F&& f,
                                               const QuadratureRule<Domain>& rule, int n) {
  detail::require_scalar_for<Scalar>(kernel, "classical_hyperinterpolation");
  if (!compatible(kernel, Domain::region().kind)) throw DomainError("classical_hyperinterpolation: kernel and rule regions differ");
  const auto d = Domain::dim(n);
  std::vector<Scalar> acc(d, Scalar{});
  std::vector<double> p(d);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const auto& x = rule.points[j];
    if (singularity_distance(kernel, x) < 1e-14) {
      throw NumericalError("classical_hyperinterpolation", "quadrature node on a kernel singularity");
    }
    const Scalar kf = to_scalar<Scalar>(kernel_value(kernel, x)) * (rule.weights[j] * f(x));
    Domain::basis(n, x, p);
    for (std::size_t l = 0; l < d; ++l) acc[l] += kf * p[l];
  }
  Expansion<Scalar> e{Domain::basis_set(n), {}, Provenance::classical, rule.size() < d};
  e.coefficients = Eigen::Map<typename Expansion<Scalar>::Vector>(acc.data(), static_cast<Eigen::Index>(d));
  return e;
}

template <class Domain, class Scalar>
Scalar evaluate_expansion(const Expansion<Scalar>& e, const typename Domain::Point& x) {
  Domain::check_point(x);
  std::vector<double> p(static_cast<std::size_t>(e.coefficients.size()));
  Domain::basis(e.basis.max_degree, x, p);
  Scalar s{};
  for (std::size_t l = 0; l < p.size(); ++l) s += e.coefficients(static_cast<Eigen::Index>(l)) * p[l];
  return s;
}

template <class Domain, class Scalar>
std::vector<Scalar> evaluate_expansion(const Expansion<Scalar>& e, std::span<const typename Domain::Point> points) {
  std::vector<Scalar> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(evaluate_expansion<Domain>(e, x));
  return out;
}

} // namespace hyperapprox
