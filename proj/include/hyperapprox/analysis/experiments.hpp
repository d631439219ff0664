#pragma once

// Experiment harness: configurations, error rows, the (n, m) tables and
// sweeps, and the stability-bound audit.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <limits>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "../connection.hpp"
#include "../hyperinterp.hpp"
#include "../kernel.hpp"
#include "../moments.hpp"
#include "../quadrature.hpp"
#include "../reference.hpp"

namespace hyperapprox::analysis {

enum class TestFunction { runge_shifted, gauss, sphere_cos, sphere_exp };

inline const char* to_string(TestFunction f) noexcept {
  switch (f) {
    case TestFunction::runge_shifted: return "runge_shifted";
    case TestFunction::gauss: return "gauss";
    case TestFunction::sphere_cos: return "sphere_cos";
    default: return "sphere_exp";
  }
}

inline std::optional<TestFunction> parse_test_function(const std::string& s) {
  for (auto f : {TestFunction::runge_shifted, TestFunction::gauss, TestFunction::sphere_cos, TestFunction::sphere_exp}) {
    if (s == to_string(f)) return f;
  }
  return std::nullopt;
}

inline RegionKind region_of(TestFunction f) noexcept {
  return (f == TestFunction::runge_shifted || f == TestFunction::gauss) ? RegionKind::interval : RegionKind::sphere;
}

// (1.2 - x^2)^{-1} and e^{-x^2} on the interval
inline double evaluate(TestFunction f, double x) {
  if (f == TestFunction::runge_shifted) return 1.0 / (1.2 - x * x);
  if (f == TestFunction::gauss) return std::exp(-x * x);
  throw DomainError("test function is defined on the sphere");
}

// cos(cosh(xz) - 2y) and e^{x+y+z} on the sphere
inline double evaluate(TestFunction f, const SphericalPoint& p) {
  if (f == TestFunction::sphere_cos) return std::cos(std::cosh(p.x * p.z) - 2.0 * p.y);
  if (f == TestFunction::sphere_exp) return std::exp(p.x + p.y + p.z);
  throw DomainError("test function is defined on the interval");
}

enum class NormKind { L1 = 1, L2 = 2 };

inline const char* to_string(NormKind n) noexcept { return n == NormKind::L1 ? "L1" : "L2"; }

struct RuleSpec {
  enum class Kind { gauss_legendre, sphere_product, design_file };
  Kind kind = Kind::gauss_legendre;
  std::filesystem::path path; // design_file only
};

struct ExperimentConfig {
  Region region = Region::interval();
  KernelDescriptor kernel = kernels::Unit{};
  TestFunction f = TestFunction::runge_shifted;
  int n = 0;
  // Interval: Gauss-Legendre point count. Sphere: design size (t+1)^2.
  int m = 0;
  NormKind norm = NormKind::L2;
  RuleSpec rule;
  std::filesystem::path designs_dir; // searched for sd_t<t>_m<m>.txt
};

struct ErrorRow {
  ExperimentConfig config;
  std::size_t m_actual = 0;
  int exactness = -1;
  double eta = 0.0;
  bool rank_deficient = false;
  double A_n = 0.0;
  double err_classical = 0.0;
  double err_efficient = 0.0;
  double norm_efficient = 0.0;        // ||S_n F||_2
  double norm_classical_f = 0.0;      // ||L_n f||_2 (hyperinterpolant of f alone)
  double f_sup = 0.0;                 // sampled ||f||_inf
  double seconds = 0.0;
  std::string rule_source;
};

struct ExperimentOptions {
  int jobs = 0; // 0: hardware concurrency
  ReferenceOptions reference;
};

// ---------------------------------------------------------------------------
// Rules

template <class Domain>
struct BuiltRule {
  QuadratureRule<Domain> rule;
  std::string source;
};

inline std::filesystem::path designs_directory(const std::filesystem::path& configured) {
  if (!configured.empty()) return configured;
  if (const char* env = std::getenv("HYPERAPPROX_DESIGNS")) return env;
  return {};
}

inline int design_strength(int m) {
  const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
  if (root < 1 || root * root != m) throw DomainError("sphere rule size must be a square (t+1)^2, got " + std::to_string(m));
  return root - 1;
}

// Product rule of exactness t, rotated in longitude when a node would land on
// the kernel's singular point.
inline SphereRule product_rule_avoiding(const KernelDescriptor& kernel, int t) {
  auto rule = sphere_product_rule(t);
  for (const auto& p : rule.points) {
    if (singularity_distance(kernel, p) < 1e-10) return sphere_product_rule(t, std::numbers::pi / (t + 1));
  }
  return rule;
}

inline BuiltRule<Interval> build_interval_rule(const ExperimentConfig& c) {
  if (c.rule.kind != RuleSpec::Kind::gauss_legendre) throw DomainError("interval experiments use Gauss-Legendre rules");
  return {gauss_legendre(c.m), "gauss_legendre"};
}

// Sphere: an explicit design file, else sd_t<t>_m<m>.txt from the designs
// directory, else the product rule of the same exactness t (marked fallback).
inline BuiltRule<Sphere> build_sphere_rule(const ExperimentConfig& c) {
  const int t = design_strength(c.m);
  auto from_file = [&](const std::filesystem::path& p) -> std::optional<BuiltRule<Sphere>> {
    auto load = load_spherical_design(p, t);
    if (!load.verified) return std::nullopt;
    return BuiltRule<Sphere>{std::move(load.rule), "design_file:" + p.filename().string()};
  };
  if (c.rule.kind == RuleSpec::Kind::design_file) {
    if (auto r = from_file(c.rule.path)) return std::move(*r);
    throw NumericalError("load_spherical_design", "design " + c.rule.path.string() + " fails its claimed exactness");
  }
  if (c.rule.kind == RuleSpec::Kind::sphere_product) return {product_rule_avoiding(c.kernel, t), "sphere_product"};
  const auto dir = designs_directory(c.designs_dir);
  if (!dir.empty()) {
    const auto p = dir / ("sd_t" + std::to_string(t) + "_m" + std::to_string(c.m) + ".txt");
    if (std::filesystem::exists(p)) {
      if (auto r = from_file(p)) return std::move(*r);
    }
  }
  return {product_rule_avoiding(c.kernel, t), "sphere_product(fallback)"};
}

// ---------------------------------------------------------------------------
// Caches: moments per (kernel, degree) and alpha per (kernel, n). Values are
// deterministic, so a racing duplicate computation inserts an equal value.

class Caches {
public:
  template <class Scalar>
  std::shared_ptr<const MomentVector<Scalar>> moments(const KernelDescriptor& k, int degree, Region region) {
    const auto key = std::make_tuple(kernel_key(k), degree, static_cast<int>(region.kind));
    auto& map = moment_map<Scalar>();
    {
      std::lock_guard lock(mutex_);
      if (auto it = map.find(key); it != map.end()) return it->second;
    }
    auto value = std::make_shared<const MomentVector<Scalar>>(compute_moments<Scalar>(k, degree, region));
    std::lock_guard lock(mutex_);
    return map.emplace(key, value).first->second;
  }

  template <class Domain, class Scalar>
  std::shared_ptr<const AlphaMatrix<Scalar>> alpha(const KernelDescriptor& k, int n) {
    const auto key = std::make_tuple(kernel_key(k), n, static_cast<int>(Domain::region().kind));
    auto& map = alpha_map<Scalar>();
    {
      std::lock_guard lock(mutex_);
      if (auto it = map.find(key); it != map.end()) return it->second;
    }
    auto mv = moments<Scalar>(k, 2 * n, Domain::region());
    auto value = std::make_shared<const AlphaMatrix<Scalar>>(assemble_alpha<Domain>(n, *mv));
    std::lock_guard lock(mutex_);
    return map.emplace(key, value).first->second;
  }

private:
  using Key = std::tuple<std::string, int, int>;
  template <class Scalar>
  using MomentMap = std::map<Key, std::shared_ptr<const MomentVector<Scalar>>>;
  template <class Scalar>
  using AlphaMap = std::map<Key, std::shared_ptr<const AlphaMatrix<Scalar>>>;

  template <class Scalar>
  auto& moment_map() {
    if constexpr (std::is_same_v<Scalar, double>) return real_moments_;
    else return complex_moments_;
  }
  template <class Scalar>
  auto& alpha_map() {
    if constexpr (std::is_same_v<Scalar, double>) return real_alpha_;
    else return complex_alpha_;
  }

  std::mutex mutex_;
  MomentMap<double> real_moments_;
  MomentMap<std::complex<double>> complex_moments_;
  AlphaMap<double> real_alpha_;
  AlphaMap<std::complex<double>> complex_alpha_;
};

// ---------------------------------------------------------------------------
// Sup-norm estimates from 1e5 quasi-uniform samples.

inline std::vector<double> sup_sample_interval() {
  std::vector<double> x(100000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = -1.0 + 2.0 * static_cast<double>(i) / (x.size() - 1);
  return x;
}

// Fibonacci lattice on the sphere.
inline std::vector<SphericalPoint> sup_sample_sphere() {
  const std::size_t count = 100000;
  std::vector<SphericalPoint> p;
  p.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    p.push_back(SphericalPoint::normalized(r * std::cos(phi), r * std::sin(phi), z));
  }
  return p;
}

template <class Domain, class G>
double sampled_sup(G&& g) {
  double s = 0.0;
  if constexpr (std::is_same_v<Domain, Interval>) {
    for (double x : sup_sample_interval()) s = std::max(s, std::abs(g(x)));
  } else {
    for (const auto& p : sup_sample_sphere()) s = std::max(s, std::abs(g(p)));
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace detail {

template <class Domain, class Scalar>
ErrorRow run_typed(const ExperimentConfig& c, Caches& caches, const ExperimentOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  BuiltRule<Domain> built = [&] {
    if constexpr (std::is_same_v<Domain, Interval>) return build_interval_rule(c);
    else return build_sphere_rule(c);
  }();
  const auto& rule = built.rule;
  auto f = [&](const typename Domain::Point& x) { return evaluate(c.f, x); };

  ErrorRow row;
  row.config = c;
  row.m_actual = rule.size();
  row.exactness = rule.exactness;
  row.rule_source = built.source;
  const auto mz = estimate_mz_eta(rule, c.n);
  row.eta = mz.eta;
  row.rank_deficient = mz.rank_deficient;

  const auto alpha = caches.alpha<Domain, Scalar>(c.kernel, c.n);
  row.A_n = alpha->A_n;
  const auto ew = efficient_weights(rule, c.n, *alpha);
  const auto fs = sample(f, rule);
  const auto s = efficient_hyperinterpolation<Domain>(std::span<const double>(fs), ew);
  const auto l = classical_hyperinterpolation<Domain, Scalar>(c.kernel, f, rule, c.n);
  const auto lf = classical_hyperinterpolation<Domain, double>(kernels::Unit{}, f, rule, c.n);

  const int p = static_cast<int>(c.norm);
  row.err_efficient = error_norm<Domain>(s, c.kernel, f, p, opt.reference);
  row.err_classical = error_norm<Domain>(l, c.kernel, f, p, opt.reference);
  row.norm_efficient = s.coefficients.norm();
  row.norm_classical_f = lf.coefficients.norm();
  row.f_sup = sampled_sup<Domain>(f);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

} // namespace detail

inline void validate_config(const ExperimentConfig& c) {
  validate(c.kernel);
  if (!compatible(c.kernel, c.region.kind)) throw DomainError("kernel " + kernel_name(c.kernel) + " is not defined on the " + to_string(c.region.kind));
  if (region_of(c.f) != c.region.kind) throw DomainError(std::string("test function ") + to_string(c.f) + " is not defined on the " + to_string(c.region.kind));
  if (c.n < 0) throw DomainError("degree n must be non-negative");
  if (c.m < 1) throw DomainError("rule size m must be positive");
}

inline ErrorRow run_config(const ExperimentConfig& c, Caches& caches, const ExperimentOptions& opt = {}) {
  validate_config(c);
  const bool cplx = is_complex(c.kernel);
  if (c.region.kind == RegionKind::interval) {
    return cplx ? detail::run_typed<Interval, std::complex<double>>(c, caches, opt)
                : detail::run_typed<Interval, double>(c, caches, opt);
  }
  if (cplx) throw DomainError("complex kernels are interval-only");
  return detail::run_typed<Sphere, double>(c, caches, opt);
}

// Runs independent configurations on a pool of `jobs` threads; rows come back
// in input order. The first failure is rethrown after the pool drains.
inline std::vector<ErrorRow> run_configs(const std::vector<ExperimentConfig>& configs, Caches& caches,
                                         const ExperimentOptions& opt = {}) {
  std::vector<ErrorRow> rows(configs.size());
  int jobs = opt.jobs > 0 ? opt.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(configs.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        rows[i] = run_config(configs[i], caches, opt);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

// ---------------------------------------------------------------------------
// Tables and sweeps

inline std::vector<ExperimentConfig> interval_table_configs(double kappa, const std::vector<int>& ns, const std::vector<int>& ms) {
  std::vector<ExperimentConfig> out;
  for (int n : ns) {
    for (int m : ms) {
      ExperimentConfig c;
      c.region = Region::interval();
      c.kernel = kernels::IntervalOscillatory{kappa};
      c.f = TestFunction::runge_shifted;
      c.n = n;
      c.m = m;
      c.norm = NormKind::L2;
      out.push_back(c);
    }
  }
  return out;
}

inline std::vector<ErrorRow> run_interval_table(double kappa, const std::vector<int>& ns, const std::vector<int>& ms,
                                                Caches& caches, const ExperimentOptions& opt = {}) {
  return run_configs(interval_table_configs(kappa, ns, ms), caches, opt);
}

// m = ceil(factor * n / 2) Gauss-Legendre points, f = e^{-x^2}, L1 errors.
inline std::vector<ExperimentConfig> interval_sweep_configs(const KernelDescriptor& kernel, const std::vector<int>& ns, double factor) {
  std::vector<ExperimentConfig> out;
  for (int n : ns) {
    ExperimentConfig c;
    c.region = Region::interval();
    c.kernel = kernel;
    c.f = TestFunction::gauss;
    c.n = n;
    c.m = static_cast<int>(std::ceil(factor * n / 2.0 - 1e-12));
    c.norm = NormKind::L1;
    out.push_back(c);
  }
  return out;
}

inline std::vector<ErrorRow> run_interval_singular_sweep(const KernelDescriptor& kernel, const std::vector<int>& ns, double factor,
                                                         Caches& caches, const ExperimentOptions& opt = {}) {
  return run_configs(interval_sweep_configs(kernel, ns, factor), caches, opt);
}

inline std::vector<ExperimentConfig> sphere_table_configs(const KernelDescriptor& kernel, const std::vector<int>& ns, const std::vector<int>& ms,
                                                          const std::filesystem::path& designs) {
  std::vector<ExperimentConfig> out;
  for (int n : ns) {
    for (int m : ms) {
      ExperimentConfig c;
      c.region = Region::sphere();
      c.kernel = kernel;
      c.f = TestFunction::sphere_cos;
      c.n = n;
      c.m = m;
      c.norm = NormKind::L2;
      c.designs_dir = designs;
      out.push_back(c);
    }
  }
  return out;
}

inline std::vector<ErrorRow> run_sphere_table(const KernelDescriptor& kernel, const std::vector<int>& ns, const std::vector<int>& ms,
                                              const std::filesystem::path& designs, Caches& caches, const ExperimentOptions& opt = {}) {
  return run_configs(sphere_table_configs(kernel, ns, ms, designs), caches, opt);
}

// m = (ceil(factor * n) + 1)^2, f = e^{x+y+z}, L1 errors.
inline std::vector<ExperimentConfig> sphere_sweep_configs(const KernelDescriptor& kernel, const std::vector<int>& ns, double factor,
                                                          const std::filesystem::path& designs) {
  std::vector<ExperimentConfig> out;
  for (int n : ns) {
    ExperimentConfig c;
    c.region = Region::sphere();
    c.kernel = kernel;
    c.f = TestFunction::sphere_exp;
    c.n = n;
    const int t = static_cast<int>(std::ceil(factor * n - 1e-12));
    c.m = (t + 1) * (t + 1);
    c.norm = NormKind::L1;
    c.designs_dir = designs;
    out.push_back(c);
  }
  return out;
}

inline std::vector<ErrorRow> run_sphere_singular_sweep(const KernelDescriptor& kernel, const std::vector<int>& ns, double factor,
                                                       const std::filesystem::path& designs, Caches& caches,
                                                       const ExperimentOptions& opt = {}) {
  return run_configs(sphere_sweep_configs(kernel, ns, factor, designs), caches, opt);
}

// ---------------------------------------------------------------------------
// Stability audit

enum class Theorem {
  l1_stability,         // ||S_n F||_2 <= V^{1/2} A_n / sqrt(1-eta) ||f||_inf
  continuous_stability, // ||S_n F||_2 <= V^{1/2} / sqrt(1-eta) ||K||_inf ||f||_inf
  alpha_contraction     // ||S_n F||_2 <= A_n ||L_n f||_2, no MZ assumption needed
};

inline const char* to_string(Theorem t) noexcept {
  switch (t) {
    case Theorem::l1_stability: return "l1_stability";
    case Theorem::continuous_stability: return "continuous_stability";
    default: return "alpha_contraction";
  }
}

enum class BoundStatus { pass, fail, skipped };

inline const char* to_string(BoundStatus s) noexcept {
  return s == BoundStatus::pass ? "PASS" : s == BoundStatus::fail ? "FAIL" : "SKIPPED";
}

struct StabilityReport {
  Theorem theorem;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  BoundStatus status = BoundStatus::skipped;
  std::string note;
};

// Sup of |K| for bounded kernels: exact for unit and oscillatory kernels,
// sampled otherwise.
inline std::optional<double> kernel_sup(const KernelDescriptor& k) {
  if (!is_continuous(k)) return std::nullopt;
  if (is_unit(k) || is_complex(k)) return 1.0;
  if (kernel_region(k) == RegionKind::interval) {
    return sampled_sup<Interval>([&](double x) { return std::abs(kernel_value(k, x)); });
  }
  return sampled_sup<Sphere>([&](const SphericalPoint& p) { return std::abs(kernel_value(k, p)); });
}

inline StabilityReport check_stability_bound(const ErrorRow& row, Theorem theorem) {
  StabilityReport r;
  r.theorem = theorem;
  r.lhs = row.norm_efficient;
  const double v = row.config.region.measure();
  if (theorem == Theorem::alpha_contraction) {
    r.rhs = row.A_n * row.norm_classical_f;
  } else {
    if (!(row.eta < 1.0)) {
      r.note = row.rank_deficient ? "eta >= 1 (m < d_n, rank deficient): bound vacuous" : "eta >= 1: bound vacuous";
      r.rhs = std::numeric_limits<double>::infinity();
      r.margin = std::numeric_limits<double>::infinity();
      return r;
    }
    const double scale = std::sqrt(v) / std::sqrt(1.0 - row.eta) * row.f_sup;
    if (theorem == Theorem::l1_stability) {
      r.rhs = scale * row.A_n;
    } else {
      const auto ksup = kernel_sup(row.config.kernel);
      if (!ksup) {
        r.note = "kernel unbounded";
        r.rhs = r.margin = std::numeric_limits<double>::infinity();
        return r;
      }
      r.rhs = scale * *ksup;
    }
  }
  r.margin = r.rhs - r.lhs;
  r.status = r.margin >= -1e-9 ? BoundStatus::pass : BoundStatus::fail;
  return r;
}

} // namespace hyperapprox::analysis
