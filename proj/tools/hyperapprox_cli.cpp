// hyperapprox: error tables, convergence sweeps, moment dumps, rule validation
// and the invariant self-test.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <hyperapprox.hpp>

namespace ha = hyperapprox;
namespace an = hyperapprox::analysis;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KernelFlags {
  std::string region;
  std::string kernel;
  double kappa = 100.0;
  double nu = -0.5;
  double nu2 = -0.5;
  std::string xi = "0.70710678118654752,0.70710678118654752,0";
  double a = std::numeric_limits<double>::quiet_NaN();
  int lbar = 12;
  int kbar = 8;
};

void add_kernel_flags(CLI::App* app, KernelFlags& k) {
  app->add_option("--region", k.region, "interval or sphere (inferred from the kernel when omitted)")
      ->check(CLI::IsMember({"interval", "sphere"}));
  app->add_option("--kernel", k.kernel, "kernel name")
      ->required()
      ->check(CLI::IsMember({"osc", "alg_left", "alg_right", "cheb_weight", "harmonic", "sphere_alg", "sphere_log",
                             "sphere_double", "unit"}));
  app->add_option("--kappa", k.kappa, "frequency of e^{i kappa x}");
  app->add_option("--nu", k.nu, "exponent: sphere_alg nu, sphere_double nu1");
  app->add_option("--nu2", k.nu2, "sphere_double exponent at -xi");
  app->add_option("--a", k.a, "interval algebraic exponent (default -1/3 left, -0.2 right)");
  app->add_option("--xi", k.xi, "singular point x,y,z on the sphere");
  app->add_option("--lbar", k.lbar, "harmonic kernel degree");
  app->add_option("--kbar", k.kbar, "harmonic kernel order");
}

std::vector<double> parse_reals(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": cannot parse '" + tok + "'");
    }
  }
  return out;
}

// "100,120,150" or a range "6:120:3" (start:stop:step, inclusive)
std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  if (s.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) {
      try {
        std::size_t used = 0;
        parts.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ConfigError(std::string(what) + ": bad range '" + s + "'");
      }
    }
    if (parts.size() == 2) parts.push_back(1);
    if (parts.size() != 3 || parts[2] < 1) throw ConfigError(std::string(what) + ": bad range '" + s + "'");
    for (int v = parts[0]; v <= parts[1]; v += parts[2]) out.push_back(v);
  } else {
    for (double v : parse_reals(s, what)) {
      if (v != std::floor(v)) throw ConfigError(std::string(what) + ": expected integers");
      out.push_back(static_cast<int>(v));
    }
  }
  if (out.empty()) throw ConfigError(std::string(what) + " is empty");
  return out;
}

ha::KernelDescriptor make_kernel(const KernelFlags& f) {
  auto xi = [&] {
    const auto v = parse_reals(f.xi, "--xi");
    if (v.size() != 3) throw ConfigError("--xi needs three components");
    return ha::SphericalPoint::normalized(v[0], v[1], v[2]);
  };
  ha::KernelDescriptor k;
  if (f.kernel == "osc") k = ha::kernels::IntervalOscillatory{f.kappa};
  else if (f.kernel == "alg_left") k = ha::kernels::IntervalAlgebraicLeft{std::isnan(f.a) ? -1.0 / 3.0 : f.a};
  else if (f.kernel == "alg_right") k = ha::kernels::IntervalAlgebraicRight{std::isnan(f.a) ? -0.2 : f.a};
  else if (f.kernel == "cheb_weight") k = ha::kernels::IntervalChebyshevWeight{};
  else if (f.kernel == "harmonic") k = ha::kernels::SphereHarmonic{f.lbar, f.kbar};
  else if (f.kernel == "sphere_alg") k = ha::kernels::SphereAlgebraic{xi(), f.nu};
  else if (f.kernel == "sphere_log") k = ha::kernels::SphereLog{xi()};
  else if (f.kernel == "sphere_double") k = ha::kernels::SphereDoubleAlgebraic{xi(), f.nu, f.nu2};
  else k = ha::kernels::Unit{};
  ha::validate(k);
  return k;
}

ha::Region make_region(const KernelFlags& f, const ha::KernelDescriptor& k) {
  const auto kr = ha::kernel_region(k);
  if (f.region.empty()) {
    if (!kr) throw ConfigError("--region is required for the unit kernel");
    return {*kr};
  }
  const ha::Region r{f.region == "sphere" ? ha::RegionKind::sphere : ha::RegionKind::interval};
  if (kr && *kr != r.kind) throw ConfigError("kernel " + f.kernel + " is not defined on the " + f.region);
  return r;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  return os;
}

// Appends "--key value" for every JSON config entry not already given on the
// command line, so explicit flags take precedence.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  bool has_sub = args.size() > 1 && args[1].rfind("--", 0) != 0;
  if (j.contains("subcommand")) {
    if (!j["subcommand"].is_string()) throw ConfigError("config: 'subcommand' must be a string");
    if (!has_sub) args.insert(args.begin() + 1, j["subcommand"].get<std::string>());
  }
  for (auto& [key, value] : j.items()) {
    if (key == "subcommand") continue;
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
    if (given) continue;
    std::string text;
    if (value.is_string()) text = value.get<std::string>();
    else if (value.is_number_integer()) text = std::to_string(value.get<long long>());
    else if (value.is_number()) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
      text = buf;
    } else if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
      continue;
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number()) throw ConfigError("config: array '" + key + "' must hold numbers");
        if (i) text += ',';
        text += value[i].dump();
      }
    } else {
      throw ConfigError("config: unsupported value for '" + key + "'");
    }
    args.push_back(flag);
    args.push_back(text);
  }
  return args;
}

void print_audit(const std::vector<an::ErrorRow>& rows) {
  for (const auto& r : rows) {
    for (auto th : {an::Theorem::l1_stability, an::Theorem::continuous_stability, an::Theorem::alpha_contraction}) {
      const auto rep = an::check_stability_bound(r, th);
      std::fprintf(stderr, "audit n=%d m=%zu %-21s %-7s lhs=%.4e rhs=%.4e %s\n", r.config.n, r.m_actual,
                   an::to_string(th), an::to_string(rep.status), rep.lhs, rep.rhs, rep.note.c_str());
    }
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperinterpolation of kernel-weighted functions on [-1,1] and the sphere"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file of flag values; command-line flags override it");

  KernelFlags tk, sk, mk;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  double density = 1.0;

  // table
  auto* table = app.add_subcommand("table", "error table over an (n, m) grid");
  add_kernel_flags(table, tk);
  std::string t_ns, t_ms, t_out, t_designs, t_f, t_norm;
  bool t_audit = false;
  table->add_option("--n-list", t_ns, "degrees, e.g. 100,120,150")->required();
  table->add_option("--m-list", t_ms, "rule sizes: Gauss-Legendre points, or design sizes (t+1)^2")->required();
  table->add_option("--f", t_f, "test function (default: runge_shifted / sphere_cos)");
  table->add_option("--norm", t_norm, "L1 or L2 (default L2)")->check(CLI::IsMember({"L1", "L2"}));
  table->add_option("--out", t_out, "CSV path (default stdout)");
  table->add_option("--designs", t_designs, "directory of sd_t<t>_m<m>.txt design files");
  table->add_flag("--audit", t_audit, "print stability-bound reports to stderr");
  table->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  table->add_option("--density", density, "reference quadrature density")->check(CLI::PositiveNumber);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "errors against n with m tied to n");
  add_kernel_flags(sweep, sk);
  std::string s_ns, s_out, s_svg, s_designs, s_f, s_norm;
  double factor = 1.1;
  bool s_audit = false;
  sweep->add_option("--n-list", s_ns, "degrees, list or start:stop:step")->required();
  sweep->add_option("--factor", factor, "m = ceil(factor n / 2) on [-1,1], (ceil(factor n)+1)^2 on the sphere")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--f", s_f, "test function (default: gauss / sphere_exp)");
  sweep->add_option("--norm", s_norm, "L1 or L2 (default L1)")->check(CLI::IsMember({"L1", "L2"}));
  sweep->add_option("--out", s_out, "CSV path (default stdout)");
  sweep->add_option("--svg", s_svg, "SVG plot path");
  sweep->add_option("--designs", s_designs, "directory of sd_t<t>_m<m>.txt design files");
  sweep->add_flag("--audit", s_audit, "print stability-bound reports to stderr");
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--density", density, "reference quadrature density")->check(CLI::PositiveNumber);

  // moments
  auto* moments = app.add_subcommand("moments", "dump modified moments (and optionally alpha) as CSV");
  add_kernel_flags(moments, mk);
  int max_r = -1, alpha_n = -1;
  std::string m_out, alpha_out;
  moments->add_option("--max-r", max_r, "maximum Chebyshev degree (interval) or harmonic degree (sphere)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  moments->add_option("--out", m_out, "CSV path (default stdout)");
  moments->add_option("--alpha-n", alpha_n, "also assemble alpha for this degree")->check(CLI::NonNegativeNumber);
  moments->add_option("--alpha-out", alpha_out, "CSV path for alpha")->needs("--alpha-n");

  // validate
  auto* validate = app.add_subcommand("validate", "exactness defect and MZ constant of a rule");
  std::string v_rule;
  int v_degree = 0, v_mz = -1;
  validate->add_option("--rule", v_rule, "gl:<m>, sphere:<t> or design:<path>:<t>")->required();
  validate->add_option("--degree", v_degree, "degree for the exactness check")->required()->check(CLI::NonNegativeNumber);
  validate->add_option("--mz-n", v_mz, "also report eta for this n")->check(CLI::NonNegativeNumber);

  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = merge_config(std::move(args));
    // CLI11 parses argv back to front
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    an::ExperimentOptions opt;
    opt.jobs = jobs;
    opt.reference.density = density;
    an::Caches caches;

    if (table->parsed() || sweep->parsed()) {
      const bool is_table = table->parsed();
      const auto& kf = is_table ? tk : sk;
      const auto kernel = make_kernel(kf);
      const auto region = make_region(kf, kernel);
      const auto ns = parse_int_list(is_table ? t_ns : s_ns, "--n-list");
      const std::string fname = is_table ? t_f : s_f;
      const std::string norm = is_table ? t_norm : s_norm;
      std::vector<an::ExperimentConfig> configs;
      if (is_table) {
        const auto ms = parse_int_list(t_ms, "--m-list");
        configs = region.kind == ha::RegionKind::interval ? an::interval_table_configs(1.0, ns, ms)
                                                          : an::sphere_table_configs(kernel, ns, ms, t_designs);
      } else {
        configs = region.kind == ha::RegionKind::interval ? an::interval_sweep_configs(kernel, ns, factor)
                                                          : an::sphere_sweep_configs(kernel, ns, factor, s_designs);
      }
      for (auto& c : configs) {
        c.kernel = kernel;
        c.region = region;
        if (!fname.empty()) {
          const auto f = an::parse_test_function(fname);
          if (!f) throw ConfigError("unknown test function " + fname);
          c.f = *f;
        }
        if (!norm.empty()) c.norm = norm == "L1" ? an::NormKind::L1 : an::NormKind::L2;
        an::validate_config(c);
      }
      const auto rows = an::run_configs(configs, caches, opt);
      const std::string out = is_table ? t_out : s_out;
      if (out.empty()) {
        an::write_table_csv(std::cout, rows);
      } else {
        auto os = open_out(out);
        an::write_table_csv(os, rows);
      }
      if (!is_table && !s_svg.empty()) {
        auto os = open_out(s_svg);
        an::write_sweep_svg(os, rows, ha::kernel_name(kernel) + " " + ha::kernel_parameter(kernel));
      }
      if ((is_table && t_audit) || (!is_table && s_audit)) print_audit(rows);
      for (const auto& r : rows) {
        if (r.rule_source.find("fallback") != std::string::npos) {
          std::cerr << "note: no verified design file for some rows; product rules of the same exactness were used\n";
          break;
        }
      }
      return 0;
    }

    if (moments->parsed()) {
      const auto kernel = make_kernel(mk);
      const auto region = make_region(mk, kernel);
      auto emit = [&](const auto& mv) {
        if (m_out.empty()) {
          an::write_moments_csv(std::cout, mv);
        } else {
          auto os = open_out(m_out);
          an::write_moments_csv(os, mv);
        }
      };
      auto emit_alpha = [&](auto tag) {
        using Scalar = decltype(tag);
        if (alpha_n < 0) return;
        const auto mv = ha::compute_moments<Scalar>(kernel, 2 * alpha_n, region);
        auto write = [&](const auto& a) {
          std::fprintf(stderr, "alpha n=%d A_n=%.10e\n", alpha_n, a.A_n);
          if (alpha_out.empty()) return;
          auto os = open_out(alpha_out);
          an::write_alpha_csv(os, a);
        };
        if (region.kind == ha::RegionKind::interval) write(ha::assemble_alpha<ha::Interval>(alpha_n, mv));
        else write(ha::assemble_alpha<ha::Sphere>(alpha_n, mv));
      };
      if (ha::is_complex(kernel)) {
        emit(ha::compute_moments<std::complex<double>>(kernel, max_r, region));
        emit_alpha(std::complex<double>{});
      } else {
        emit(ha::compute_moments<double>(kernel, max_r, region));
        emit_alpha(double{});
      }
      return 0;
    }

    if (validate->parsed()) {
      auto report = [&](const auto& rule) {
        const double defect = ha::verify_exactness(rule, v_degree);
        double wmin = 1e300;
        for (double w : rule.weights) wmin = std::min(wmin, w);
        std::printf("rule %s\npoints %zu\nweight_sum %.17g\nmin_weight %.3e\ndegree %d\nmax_defect %.3e\n",
                    rule.source.c_str(), rule.size(), rule.weight_sum(), wmin, v_degree, defect);
        if (v_mz >= 0) {
          const auto mz = ha::estimate_mz_eta(rule, v_mz);
          std::printf("mz_n %d\neta %.6e\nrank_deficient %s\n", v_mz, mz.eta, mz.rank_deficient ? "yes" : "no");
        }
        const bool exact = defect <= 1e-8;
        std::printf("status %s\n", exact ? "exact" : "not exact");
        return exact ? 0 : kExitNumerical;
      };
      auto number = [&](const std::string& s) {
        try {
          std::size_t used = 0;
          const int v = std::stoi(s, &used);
          if (used != s.size()) throw std::invalid_argument(s);
          return v;
        } catch (const std::exception&) {
          throw ConfigError("--rule: bad integer '" + s + "'");
        }
      };
      if (v_rule.rfind("gl:", 0) == 0) return report(ha::gauss_legendre(number(v_rule.substr(3))));
      if (v_rule.rfind("sphere:", 0) == 0) return report(ha::sphere_product_rule(number(v_rule.substr(7))));
      if (v_rule.rfind("design:", 0) == 0) {
        const auto rest = v_rule.substr(7);
        const auto colon = rest.rfind(':');
        if (colon == std::string::npos) throw ConfigError("--rule design:<path>:<t>");
        const int t = number(rest.substr(colon + 1));
        const auto load = ha::load_spherical_design(rest.substr(0, colon), t);
        std::printf("claimed_strength %d\nverified %s\n", t, load.verified ? "yes" : "no");
        return report(load.rule);
      }
      throw ConfigError("--rule must be gl:<m>, sphere:<t> or design:<path>:<t>");
    }

    if (selftest->parsed()) {
      int failed = 0;
      for (const auto& r : an::run_selftest()) {
        std::printf("%s  %-45s %.3e (tol %.0e)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.value, r.tolerance);
        failed += r.passed ? 0 : 1;
      }
      std::printf("%d check(s) failed\n", failed);
      return failed == 0 ? 0 : kExitNumerical;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ha::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ha::IndexError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ha::FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ha::NumericalError& e) {
    std::cerr << "numerical failure in " << e.op() << ": " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
