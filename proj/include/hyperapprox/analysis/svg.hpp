#pragma once

// Minimal SVG line plot of a sweep: error against n on a log-scale y axis,
// one polyline per scheme.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "experiments.hpp"

namespace hyperapprox::analysis {

inline void write_sweep_svg(std::ostream& os, const std::vector<ErrorRow>& rows, const std::string& title) {
  const double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 50;
  double nmin = 1e300, nmax = -1e300, emin = 1e300, emax = -1e300;
  for (const auto& r : rows) {
    nmin = std::min(nmin, double(r.config.n));
    nmax = std::max(nmax, double(r.config.n));
    for (double e : {r.err_classical, r.err_efficient}) {
      if (e > 0 && std::isfinite(e)) {
        emin = std::min(emin, e);
        emax = std::max(emax, e);
      }
    }
  }
  if (rows.empty() || emin > emax) {
    emin = 1e-16;
    emax = 1.0;
  }
  if (nmax <= nmin) nmax = nmin + 1;
  const double lo = std::floor(std::log10(emin)), hi = std::max(lo + 1, std::ceil(std::log10(emax)));
  auto px = [&](double n) { return left + (n - nmin) / (nmax - nmin) * (width - left - right); };
  auto py = [&](double e) {
    const double l = std::log10(std::max(e, std::pow(10.0, lo)));
    return top + (hi - l) / (hi - lo) * (height - top - bottom);
  };
  char buf[256];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << title << "</text>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                left, top, width - left - right, height - top - bottom);
  os << buf;
  for (int d = static_cast<int>(lo); d <= static_cast<int>(hi); ++d) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e%d</text>\n",
                  left - 6, py(std::pow(10.0, d)) + 4, d);
    os << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">n (%g to %g)</text>\n",
                width / 2, height - 15, nmin, nmax);
  os << buf;
  auto line = [&](bool efficient, const char* color) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(r.config.n), py(efficient ? r.err_efficient : r.err_classical));
      os << buf;
    }
    os << "\"/>\n";
  };
  line(false, "#c0392b");
  line(true, "#2471a3");
  os << "<text x=\"" << width - right - 150 << "\" y=\"" << top + 16
     << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#c0392b\">classical</text>\n";
  os << "<text x=\"" << width - right - 150 << "\" y=\"" << top + 30
     << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#2471a3\">efficient</text>\n";
  os << "</svg>\n";
}

} // namespace hyperapprox::analysis
