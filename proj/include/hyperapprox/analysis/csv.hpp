#pragma once

// CSV output for error tables, moment vectors and expansions.

#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "../hyperinterp.hpp"
#include "../moments.hpp"
#include "experiments.hpp"

namespace hyperapprox::analysis {

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

inline std::string sci(double v) { return fmt("%.10e", v); }

} // namespace detail

inline const char* kTableHeader =
    "region,kernel,kappa_or_nu,n,m,exactness,eta,A_n,err_classical,err_efficient,norm,rule_source,seconds";

// `m` is the number of points actually used.
inline void write_table_row(std::ostream& os, const ErrorRow& r) {
  os << to_string(r.config.region.kind) << ',' << kernel_name(r.config.kernel) << ','
     << kernel_parameter(r.config.kernel) << ',' << r.config.n << ',' << r.m_actual << ',' << r.exactness << ','
     << detail::sci(r.eta) << ',' << detail::sci(r.A_n) << ',' << detail::sci(r.err_classical) << ','
     << detail::sci(r.err_efficient) << ',' << to_string(r.config.norm) << ',' << r.rule_source << ','
     << detail::fmt("%.3f", r.seconds) << '\n';
}

inline void write_table_csv(std::ostream& os, const std::vector<ErrorRow>& rows) {
  os << kTableHeader << '\n';
  for (const auto& r : rows) write_table_row(os, r);
}

template <class Scalar>
void write_moments_csv(std::ostream& os, const MomentVector<Scalar>& mv) {
  os << "r,re,im\n";
  for (std::size_t r = 0; r < mv.values.size(); ++r) {
    const std::complex<double> v(mv.values[r]);
    os << r << ',' << detail::fmt("%.17g", v.real()) << ',' << detail::fmt("%.17g", v.imag()) << '\n';
  }
}

// One row per basis function: flat index, degree, order (0 on the interval).
template <class Scalar>
void write_expansion_csv(std::ostream& os, const Expansion<Scalar>& e) {
  os << "ell,degree,order,re,im\n";
  for (Eigen::Index i = 0; i < e.coefficients.size(); ++i) {
    int degree = static_cast<int>(i), order = 0;
    if (e.basis.family == BasisFamily::spherical_harmonic) {
      std::tie(degree, order) = degree_order(static_cast<std::size_t>(i) + 1);
    }
    const std::complex<double> v(e.coefficients(i));
    os << (i + 1) << ',' << degree << ',' << order << ',' << detail::fmt("%.17g", v.real()) << ','
       << detail::fmt("%.17g", v.imag()) << '\n';
  }
}

template <class Scalar>
void write_alpha_csv(std::ostream& os, const AlphaMatrix<Scalar>& a) {
  os << "row,col,re,im\n";
  for (Eigen::Index i = 0; i < a.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.entries.cols(); ++j) {
      const std::complex<double> v(a.entries(i, j));
      os << (i + 1) << ',' << (j + 1) << ',' << detail::fmt("%.17g", v.real()) << ',' << detail::fmt("%.17g", v.imag())
         << '\n';
    }
  }
}

} // namespace hyperapprox::analysis
