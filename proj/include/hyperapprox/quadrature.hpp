#pragma once

// Positive-weight quadrature rules with declared polynomial exactness, their
// validation, and the Marcinkiewicz-Zygmund constant of a rule.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "errors.hpp"
#include "orthopoly.hpp"
#include "region.hpp"

namespace hyperapprox {

template <class Domain>
struct QuadratureRule {
  using Point = typename Domain::Point;

  std::vector<Point> points;
  std::vector<double> weights;
  int exactness = -1; // -1: no verified exactness
  std::string source;

  std::size_t size() const noexcept { return points.size(); }
  static constexpr Region region() noexcept { return Domain::region(); }

  double weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

using IntervalRule = QuadratureRule<Interval>;
using SphereRule = QuadratureRule<Sphere>;

// Nodes and weights for an integral against a weight function other than dx.
struct WeightedNodes {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// m-point Gauss-Legendre rule on [-1,1], exact to degree 2m-1. Nodes are the
// roots of P_m found by Newton iteration from Chebyshev-type initial guesses.
inline IntervalRule gauss_legendre(int m) {
  if (m < 1) throw DomainError("gauss_legendre: need m >= 1");
  IntervalRule rule;
  rule.points.assign(static_cast<std::size_t>(m), 0.0);
  rule.weights.assign(static_cast<std::size_t>(m), 0.0);
  rule.exactness = 2 * m - 1;
  rule.source = "gauss_legendre:" + std::to_string(m);

  auto legendre_pair = [m](double x) {
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= m; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    if (m == 1) p0 = 1.0;
    return std::pair{p1, p0}; // P_m, P_{m-1}
  };

  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    bool converged = false;
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      auto [pm, pm1] = legendre_pair(x);
      dp = m * (x * pm - pm1) / (x * x - 1.0);
      const double dx = pm / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("gauss_legendre", "Newton iteration did not converge");
    if (m % 2 == 1 && i == half - 1) x = 0.0;
    auto [pm, pm1] = legendre_pair(x);
    dp = m * (x * pm - pm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[static_cast<std::size_t>(i)] = -x;
    rule.points[static_cast<std::size_t>(m - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(m - 1 - i)] = w;
  }
  return rule;
}

// Gauss-Chebyshev nodes cos((2k+1)pi/(2N)) with weights pi/N for the weight
// (1-x^2)^{-1/2}; exact to degree 2N-1.
inline WeightedNodes gauss_chebyshev(int n_nodes) {
  if (n_nodes < 1) throw DomainError("gauss_chebyshev: need at least one node");
  WeightedNodes g;
  g.nodes.resize(static_cast<std::size_t>(n_nodes));
  g.weights.assign(static_cast<std::size_t>(n_nodes), std::numbers::pi / n_nodes);
  for (int k = 0; k < n_nodes; ++k) {
    g.nodes[static_cast<std::size_t>(k)] = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n_nodes));
  }
  return g;
}

// Gauss-Jacobi rule for the weight (1-t)^alpha (1+t)^beta on [-1,1] by the
// Golub-Welsch eigenvalue method; exact to degree 2m-1.
inline WeightedNodes gauss_jacobi(int m, double alpha, double beta) {
  if (m < 1) throw DomainError("gauss_jacobi: need m >= 1");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(m), sub(std::max(m - 1, 1));
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + ab;
    const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
    const double den = s * s * (s + 1.0) * (s - 1.0);
    sub(k - 1) = std::sqrt(num / den);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  WeightedNodes g;
  g.nodes.resize(static_cast<std::size_t>(m));
  g.weights.resize(static_cast<std::size_t>(m));
  if (m == 1) {
    g.nodes[0] = diag(0);
    g.weights[0] = mu0;
    return g;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(m - 1), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw NumericalError("gauss_jacobi", "tridiagonal eigensolver failed");
  for (int k = 0; k < m; ++k) {
    g.nodes[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    g.weights[static_cast<std::size_t>(k)] = mu0 * v0 * v0;
  }
  return g;
}

// Tensor rule on the sphere exact for spherical polynomials of degree <= t:
// ceil((t+1)/2) Gauss-Legendre nodes in z = cos(theta) times t+1 equispaced
// longitudes phase + 2 pi j/(t+1).
inline SphereRule sphere_product_rule(int t, double phase = 0.0) {
  if (t < 0) throw DomainError("sphere_product_rule: need t >= 0");
  const int nz = (t + 2) / 2;
  const int nphi = t + 1;
  const IntervalRule gl = gauss_legendre(nz);
  SphereRule rule;
  rule.points.reserve(static_cast<std::size_t>(nz * nphi));
  rule.weights.reserve(static_cast<std::size_t>(nz * nphi));
  const double dphi = 2.0 * std::numbers::pi / nphi;
  for (int i = 0; i < nz; ++i) {
    const double z = gl.points[static_cast<std::size_t>(i)];
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < nphi; ++j) {
      const double phi = phase + dphi * j;
      SphericalPoint p;
      p.x = s * std::cos(phi);
      p.y = s * std::sin(phi);
      p.z = z;
      rule.points.push_back(p);
      rule.weights.push_back(dphi * gl.weights[static_cast<std::size_t>(i)]);
    }
  }
  rule.exactness = t;
  rule.source = "sphere_product:" + std::to_string(t);
  return rule;
}

// Max over basis pairs with combined degree <= d of |quadrature Gram entry -
// delta|, using the orthonormal basis of the rule's domain.
template <class Domain>
double verify_exactness(const QuadratureRule<Domain>& rule, int d) {
  if (d < 0) return std::abs(rule.weight_sum() - Domain::region().measure());
  const Eigen::MatrixXd b = basis_matrix<Domain>(d, rule.points);
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
  Eigen::MatrixXd g(b.cols(), b.cols());
  g.setZero();
  g.template selfadjointView<Eigen::Lower>().rankUpdate(b.transpose() * w.cwiseSqrt().asDiagonal());
  double defect = 0.0;
  for (Eigen::Index a = 0; a < b.cols(); ++a) {
    const int da = Domain::degree_of_slot(static_cast<std::size_t>(a));
    for (Eigen::Index c = a; c < b.cols(); ++c) {
      const int dc = Domain::degree_of_slot(static_cast<std::size_t>(c));
      if (da + dc > d) continue;
      const double exact = (a == c) ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(g(c, a) - exact));
    }
  }
  return defect;
}

struct DesignLoad {
  SphereRule rule;   // exactness == claimed strength only when verified
  double max_defect; // measured by verify_exactness at the claimed strength
  bool verified;
};

// Reads an equal-weight spherical design: one "x y z" point per line, '#'
// comment lines and blank lines ignored. Points within 1e-8 of the sphere are
// renormalized; the claimed strength is verified at tolerance 1e-8.
inline DesignLoad load_spherical_design(const std::filesystem::path& path, int t) {
  std::ifstream in(path);
  if (!in) throw FormatError("load_spherical_design: cannot open " + path.string());
  SphereRule rule;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double x, y, z;
    std::string extra;
    if (!(ls >> x >> y >> z) || (ls >> extra)) {
      throw FormatError("load_spherical_design: " + path.string() + ":" + std::to_string(lineno) +
                        ": expected three reals");
    }
    const double r = std::sqrt(x * x + y * y + z * z);
    if (!(std::abs(r - 1.0) <= 1e-8)) {
      throw FormatError("load_spherical_design: " + path.string() + ":" + std::to_string(lineno) +
                        ": point is off the unit sphere");
    }
    rule.points.push_back(SphericalPoint::normalized(x, y, z));
  }
  if (rule.points.empty()) throw FormatError("load_spherical_design: no points in " + path.string());
  const double w = 4.0 * std::numbers::pi / static_cast<double>(rule.points.size());
  rule.weights.assign(rule.points.size(), w);
  rule.source = "design_file:" + path.string();
  DesignLoad out{std::move(rule), 0.0, false};
  out.max_defect = verify_exactness(out.rule, t);
  out.verified = out.max_defect <= 1e-8;
  out.rule.exactness = out.verified ? t : -1;
  return out;
}

struct MZEstimate {
  int n = 0;
  double eta = 0.0;
  bool rank_deficient = false; // m < d_n: some nonzero polynomial vanishes at every node
};

// Discrete Gram matrix G_{ll'} = sum_j w_j p_l(x_j) p_l'(x_j) over P_n.
template <class Domain>
Eigen::MatrixXd quadrature_gram(const QuadratureRule<Domain>& rule, int n) {
  const Eigen::MatrixXd b = basis_matrix<Domain>(n, rule.points);
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(b.cols(), b.cols());
  g.template selfadjointView<Eigen::Lower>().rankUpdate(b.transpose() * w.cwiseSqrt().asDiagonal());
  return g.template selfadjointView<Eigen::Lower>();
}

// Tightest constant eta with |sum_j w_j chi(x_j)^2 - int chi^2| <= eta int chi^2
// for all chi in P_n: the spectral norm of G - I.
template <class Domain>
MZEstimate estimate_mz_eta(const QuadratureRule<Domain>& rule, int n) {
  Eigen::MatrixXd g = quadrature_gram(rule, n);
  g.diagonal().array() -= 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("estimate_mz_eta", "eigensolver failed");
  MZEstimate est;
  est.n = n;
  est.eta = es.eigenvalues().cwiseAbs().maxCoeff();
  est.rank_deficient = rule.size() < Domain::dim(n);
  return est;
}

} // namespace hyperapprox
