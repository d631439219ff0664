#pragma once

// Connection coefficients c_r of basis products p_l' p_l in the auxiliary
// family q_r, the kernel-weighted Gram matrix alpha_{l'l} = sum_r c_r beta_r
// and its Frobenius norm A_n.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "moments.hpp"
#include "orthopoly.hpp"
#include "quadrature.hpp"

namespace hyperapprox {

// Sparse expansion p_l' p_l = sum_r c_r q_r. `terms` holds (q index, c_r)
// with |c_r| above 1e-14; the dropped entries are those forced to zero by
// parity and selection rules.
struct ProductExpansion {
  std::size_t first;  // slot of p_l'
  std::size_t second; // slot of p_l
  std::vector<std::pair<std::size_t, double>> terms;

  double coefficient(std::size_t q) const {
    for (const auto& [r, c] : terms) {
      if (r == q) return c;
    }
    return 0.0;
  }
};

inline constexpr double kDropTolerance = 1e-14;

// Chebyshev coefficients of P~_l' P~_l: c_0 = (1/pi) int P~P~ w, c_r = (2/pi)
// int P~P~ T_r w with w = (1-x^2)^{-1/2}, by Gauss-Chebyshev quadrature with
// l'+l+1 nodes (exact: the integrand has degree at most 2(l'+l)).
inline ProductExpansion product_expansion_interval(int lp, int l) {
  if (lp < 0 || l < 0) throw IndexError("product_expansion_interval: negative degree");
  const int deg = lp + l;
  const auto gc = gauss_chebyshev(deg + 1);
  std::vector<double> c(static_cast<std::size_t>(deg) + 1, 0.0);
  std::vector<double> pa(static_cast<std::size_t>(std::max(lp, l)) + 1);
  for (std::size_t k = 0; k < gc.nodes.size(); ++k) {
    const double x = gc.nodes[k];
    legendre_normalized_all(std::max(lp, l), x, pa);
    const double prod = pa[static_cast<std::size_t>(lp)] * pa[static_cast<std::size_t>(l)];
    const double theta = (2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi / (2.0 * (deg + 1));
    for (int r = 0; r <= deg; ++r) c[static_cast<std::size_t>(r)] += gc.weights[k] * prod * std::cos(r * theta);
  }
  ProductExpansion pe{static_cast<std::size_t>(lp), static_cast<std::size_t>(l), {}};
  for (int r = 0; r <= deg; ++r) {
    const double v = c[static_cast<std::size_t>(r)] * (r == 0 ? 1.0 : 2.0) / std::numbers::pi;
    if (std::abs(v) > kDropTolerance) pe.terms.emplace_back(static_cast<std::size_t>(r), v);
  }
  return pe;
}

// c_{l''k''} = int Y_{l',k'} Y_{l,k} Y_{l'',k''} domega for l'' <= l'+l with
// sphere_product_rule(2l'+2l).
inline ProductExpansion product_expansion_sphere(int lp, int kp, int l, int k) {
  const auto sa = harmonic_slot(lp, kp), sb = harmonic_slot(l, k);
  const int deg = lp + l;
  const auto rule = sphere_product_rule(2 * deg);
  std::vector<double> c(sphere_dim(deg), 0.0), y(sphere_dim(deg));
  for (std::size_t j = 0; j < rule.size(); ++j) {
    spherical_harmonics_all(deg, rule.points[j], y);
    const double prod = rule.weights[j] * y[sa] * y[sb];
    for (std::size_t s = 0; s < y.size(); ++s) c[s] += prod * y[s];
  }
  ProductExpansion pe{sa, sb, {}};
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (std::abs(c[s]) > kDropTolerance) pe.terms.emplace_back(s, c[s]);
  }
  return pe;
}

template <class Scalar>
struct AlphaMatrix {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  int n = 0;
  Matrix entries;
  double A_n = 0.0;
};

// A_n = sqrt(sum |alpha_{l'l}|^2).
template <class Scalar>
double compute_A_n(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& alpha) {
  return alpha.norm();
}

namespace detail {

template <class Scalar>
void check_moment_length(const MomentVector<Scalar>& mv, std::size_t needed) {
  if (mv.values.size() < needed) throw IndexError("assemble_alpha: moment vector too short for degree 2n");
}

// sum_j g_j b_j b_j^T over rows b_j of `basis`, accumulated in row chunks.
inline Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& basis, const Eigen::VectorXd& g) {
  const Eigen::Index chunk = 2048;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(basis.cols(), basis.cols());
  for (Eigen::Index s = 0; s < basis.rows(); s += chunk) {
    const Eigen::Index len = std::min(chunk, basis.rows() - s);
    const auto rows = basis.middleRows(s, len);
    out.noalias() += rows.transpose() * (g.segment(s, len).asDiagonal() * rows);
  }
  return out;
}

template <class Scalar>
AlphaMatrix<Scalar> finish_alpha(int n, Eigen::MatrixXd re, const Eigen::MatrixXd* im) {
  AlphaMatrix<Scalar> a;
  a.n = n;
  // exact symmetry; the two triangles differ only by rounding
  re = 0.5 * (re + re.transpose()).eval();
  if constexpr (std::is_same_v<Scalar, double>) {
    a.entries = std::move(re);
  } else {
    Eigen::MatrixXd imag = 0.5 * (*im + im->transpose());
    a.entries = re.template cast<Scalar>() + Scalar(0.0, 1.0) * imag.template cast<Scalar>();
  }
  a.A_n = compute_A_n<Scalar>(a.entries);
  return a;
}

template <class Scalar>
double real_part(const Scalar& v) {
  return std::real(v);
}
template <class Scalar>
double imag_part(const Scalar& v) {
  return std::imag(v);
}

} // namespace detail

// alpha_{l'l} = sum_r c_r(l',l) beta_r over all pairs, in factored form: the
// connection coefficients are themselves node sums, so the r-sum is folded
// into a node weight g and alpha = B^T diag(g) B with B the basis at the
// nodes. Interval: 2n+1 Gauss-Chebyshev nodes, g_k = (1/N)(beta_0 + 2 sum
// beta_r T_r(x_k)). Sphere: a product rule exact for the triple products,
// g_j = v_j sum_s beta_s Y_s(y_j). Identical to assemble_alpha_direct up to
// rounding, without the d_n^2 x d_2n tensor.
template <class Domain, class Scalar>
AlphaMatrix<Scalar> assemble_alpha(int n, const MomentVector<Scalar>& mv) {
  if (n < 0) throw DomainError("assemble_alpha: negative degree");
  constexpr bool is_complex_scalar = !std::is_same_v<Scalar, double>;
  if constexpr (std::is_same_v<Domain, Interval>) {
    detail::check_moment_length(mv, static_cast<std::size_t>(2 * n + 1));
    const int nodes = 2 * n + 1;
    const auto gc = gauss_chebyshev(nodes);
    Eigen::VectorXd g_re(nodes), g_im(nodes);
    for (int k = 0; k < nodes; ++k) {
      const double theta = (2.0 * k + 1.0) * std::numbers::pi / (2.0 * nodes);
      Scalar s = mv.values[0];
      for (int r = 1; r <= 2 * n; ++r) s += 2.0 * mv.values[static_cast<std::size_t>(r)] * std::cos(r * theta);
      g_re(k) = detail::real_part(s) / nodes;
      g_im(k) = detail::imag_part(s) / nodes;
    }
    const Eigen::MatrixXd b = basis_matrix<Interval>(n, std::span<const double>(gc.nodes));
    Eigen::MatrixXd re = detail::weighted_gram(b, g_re);
    if constexpr (is_complex_scalar) {
      Eigen::MatrixXd im = detail::weighted_gram(b, g_im);
      return detail::finish_alpha<Scalar>(n, std::move(re), &im);
    } else {
      return detail::finish_alpha<Scalar>(n, std::move(re), nullptr);
    }
  } else {
    detail::check_moment_length(mv, sphere_dim(2 * n));
    // effective degree of the kernel's expansion: trailing zero moments
    // (harmonic and unit kernels) lower the rule needed
    int kdeg = 0;
    for (std::size_t s = sphere_dim(2 * n); s-- > 0;) {
      if (mv.values[s] != Scalar{}) {
        kdeg = degree_order(s + 1).first;
        break;
      }
    }
    const auto rule = sphere_product_rule(2 * n + kdeg);
    const auto m = static_cast<Eigen::Index>(rule.size());
    Eigen::VectorXd g_re(m), g_im(m);
    std::vector<double> y(sphere_dim(kdeg));
    for (Eigen::Index j = 0; j < m; ++j) {
      spherical_harmonics_all(kdeg, rule.points[static_cast<std::size_t>(j)], y);
      Scalar s{};
      for (std::size_t q = 0; q < y.size(); ++q) s += mv.values[q] * y[q];
      const double v = rule.weights[static_cast<std::size_t>(j)];
      g_re(j) = v * detail::real_part(s);
      g_im(j) = v * detail::imag_part(s);
    }
    const Eigen::MatrixXd b = basis_matrix<Sphere>(n, std::span<const SphericalPoint>(rule.points));
    Eigen::MatrixXd re = detail::weighted_gram(b, g_re);
    if constexpr (is_complex_scalar) {
      Eigen::MatrixXd im = detail::weighted_gram(b, g_im);
      return detail::finish_alpha<Scalar>(n, std::move(re), &im);
    } else {
      return detail::finish_alpha<Scalar>(n, std::move(re), nullptr);
    }
  }
}

// Literal per-pair assembly alpha_{l'l} = sum_r c_r beta_r from stored
// product expansions. Quadratic in d_n times the expansion length; meant for
// small n and for checking assemble_alpha.
template <class Domain, class Scalar>
AlphaMatrix<Scalar> assemble_alpha_direct(int n, const MomentVector<Scalar>& mv) {
  const auto d = static_cast<Eigen::Index>(Domain::dim(n));
  detail::check_moment_length(mv, std::is_same_v<Domain, Interval> ? static_cast<std::size_t>(2 * n + 1) : sphere_dim(2 * n));
  typename AlphaMatrix<Scalar>::Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      ProductExpansion pe;
      if constexpr (std::is_same_v<Domain, Interval>) {
        pe = product_expansion_interval(static_cast<int>(i), static_cast<int>(j));
      } else {
        const auto [li, ki] = degree_order(static_cast<std::size_t>(i) + 1);
        const auto [lj, kj] = degree_order(static_cast<std::size_t>(j) + 1);
        pe = product_expansion_sphere(li, ki, lj, kj);
      }
      Scalar s{};
      for (const auto& [r, c] : pe.terms) s += c * mv.values[r];
      a(i, j) = s;
      a(j, i) = s;
    }
  }
  AlphaMatrix<Scalar> out;
  out.n = n;
  out.entries = std::move(a);
  out.A_n = compute_A_n<Scalar>(out.entries);
  return out;
}

} // namespace hyperapprox
