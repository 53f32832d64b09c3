#ifndef OGMLAB_PLOT_HPP
#define OGMLAB_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ogmlab/trace.hpp"

namespace ogm {

namespace detail {

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;  // (k, positive value)
};

inline std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

/// Self-contained SVG: log-scale optimality gap f(y_k) - f* plus the bound
/// curves against the iteration counter. Non-finite and non-positive samples
/// are dropped (they cannot be placed on a log axis).
inline std::string render_plot_svg(const Trace& trace) {
  if (trace.rows.empty()) throw std::invalid_argument("render_plot_svg: trace is empty");

  std::vector<detail::PlotSeries> series(3);
  series[0] = {"f(y_k) - f*", "#1f77b4", {}};
  series[1] = {"primary bound", "#d62728", {}};
  series[2] = {"secondary bound", "#2ca02c", {}};
  for (const TraceRecord& r : trace.rows) {
    const double gap = r.f_y - trace.meta.f_star;
    auto keep = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (keep(gap)) series[0].points.emplace_back(static_cast<double>(r.k), gap);
    if (keep(r.bound_primary))
      series[1].points.emplace_back(static_cast<double>(r.k), r.bound_primary);
    if (keep(r.bound_secondary))
      series[2].points.emplace_back(static_cast<double>(r.k), r.bound_secondary);
  }
  series.erase(std::remove_if(series.begin(), series.end(),
                              [](const detail::PlotSeries& s) { return s.points.empty(); }),
               series.end());

  const double width = 720.0, height = 460.0;
  const double ml = 70.0, mr = 160.0, mt = 30.0, mb = 50.0;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double kmin = 0.0, kmax = 1.0;
  double lmin = -1.0, lmax = 1.0;  // log10 range
  bool any = false;
  for (const auto& s : series)
    for (const auto& [k, v] : s.points) {
      const double lv = std::log10(v);
      if (!any) {
        kmin = kmax = k;
        lmin = lmax = lv;
        any = true;
      } else {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
        lmin = std::min(lmin, lv);
        lmax = std::max(lmax, lv);
      }
    }
  if (kmax - kmin < 1.0) kmax = kmin + 1.0;
  if (lmax - lmin < 1e-9) {
    lmin -= 0.5;
    lmax += 0.5;
  }

  auto sx = [&](double k) { return ml + (k - kmin) / (kmax - kmin) * pw; };
  auto sy = [&](double lv) { return mt + (lmax - lv) / (lmax - lmin) * ph; };

  using detail::fmt_coord;
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_coord(width) +
         "\" height=\"" + fmt_coord(height) + "\" viewBox=\"0 0 " + fmt_coord(width) + " " +
         fmt_coord(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt_coord(ml) + "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" +
         trace.meta.method + " on " + trace.meta.problem + "</text>\n";

  // Axes.
  svg += "<line x1=\"" + fmt_coord(ml) + "\" y1=\"" + fmt_coord(mt) + "\" x2=\"" + fmt_coord(ml) +
         "\" y2=\"" + fmt_coord(mt + ph) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt_coord(ml) + "\" y1=\"" + fmt_coord(mt + ph) + "\" x2=\"" +
         fmt_coord(ml + pw) + "\" y2=\"" + fmt_coord(mt + ph) + "\" stroke=\"black\"/>\n";

  // Log-axis ticks at integer powers of ten.
  const long p0 = static_cast<long>(std::ceil(lmin));
  const long p1 = static_cast<long>(std::floor(lmax));
  const long pstep = std::max<long>(1, (p1 - p0) / 8 + 1);
  for (long p = p0; p <= p1; p += pstep) {
    const double y = sy(static_cast<double>(p));
    svg += "<line x1=\"" + fmt_coord(ml - 4) + "\" y1=\"" + fmt_coord(y) + "\" x2=\"" +
           fmt_coord(ml) + "\" y2=\"" + fmt_coord(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt_coord(ml - 8) + "\" y=\"" + fmt_coord(y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e" +
           std::to_string(p) + "</text>\n";
  }
  const long ticks = 5;
  for (long i = 0; i <= ticks; ++i) {
    const double k = kmin + (kmax - kmin) * static_cast<double>(i) / ticks;
    const double x = sx(k);
    svg += "<line x1=\"" + fmt_coord(x) + "\" y1=\"" + fmt_coord(mt + ph) + "\" x2=\"" +
           fmt_coord(x) + "\" y2=\"" + fmt_coord(mt + ph + 4) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt_coord(x) + "\" y=\"" + fmt_coord(mt + ph + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
           fmt_coord(std::round(k)) + "</text>\n";
  }
  svg += "<text x=\"" + fmt_coord(ml + pw / 2) + "\" y=\"" + fmt_coord(height - 10) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">k</text>\n";

  // Curves and legend.
  double legend_y = mt + 14.0;
  for (const auto& s : series) {
    if (s.points.size() == 1) {
      svg += "<circle cx=\"" + fmt_coord(sx(s.points[0].first)) + "\" cy=\"" +
             fmt_coord(sy(std::log10(s.points[0].second))) + "\" r=\"3\" fill=\"" + s.color +
             "\"/>\n";
    } else {
      svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [k, v] : s.points) {
        svg += fmt_coord(sx(k));
        svg += ',';
        svg += fmt_coord(sy(std::log10(v)));
        svg += ' ';
      }
      svg += "\"/>\n";
    }
    const double lx = ml + pw + 12.0;
    svg += "<line x1=\"" + fmt_coord(lx) + "\" y1=\"" + fmt_coord(legend_y - 4) + "\" x2=\"" +
           fmt_coord(lx + 18) + "\" y2=\"" + fmt_coord(legend_y - 4) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt_coord(lx + 24) + "\" y=\"" + fmt_coord(legend_y) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label + "</text>\n";
    legend_y += 18.0;
  }

  svg += "</svg>\n";
  return svg;
}

inline void emit_plot(const Trace& trace, const std::string& path) {
  write_file(path, render_plot_svg(trace));
}

}  // namespace ogm

#endif  // OGMLAB_PLOT_HPP
