#pragma once

// Self-contained SVG line charts of a run: the two doubled standard
// deviations against time, with the sqrt(2) squeezing boundary marked. Long
// runs (more than 50 mechanical periods) are drawn as per-period min/max
// bands, which is how the oscillation-blurred figures in the literature look;
// short runs are drawn as raw polylines.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "strobe/constants.hpp"
#include "strobe/dynamics.hpp"
#include "strobe/errors.hpp"
#include "strobe/format.hpp"
#include "strobe/metrics.hpp"
#include "strobe/twomode.hpp"

namespace strobe {
namespace detail {

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;  // (x, y) in data units
};

struct PlotBand {
  std::string label;
  std::string color;  // fill
  std::vector<std::pair<double, double>> upper;
  std::vector<std::pair<double, double>> lower;  // same x order as upper
};

struct RefLine {
  double y = 0.0;
  std::string label;
};

inline std::string svg_chart(const std::vector<PlotSeries>& series,
                             const std::vector<PlotBand>& bands,
                             const std::vector<RefLine>& refs,
                             const std::string& x_label,
                             const std::string& y_label) {
  constexpr double W = 960.0, H = 540.0;
  constexpr double ML = 72.0, MR = 24.0, MT = 24.0, MB = 56.0;
  const double PW = W - ML - MR, PH = H - MT - MB;

  double xmin = 1e300, xmax = -1e300, ymax = -1e300;
  auto scan = [&](const std::vector<std::pair<double, double>>& pts) {
    for (const auto& [x, y] : pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymax = std::max(ymax, y);
    }
  };
  for (const auto& s : series) scan(s.points);
  for (const auto& b : bands) {
    scan(b.upper);
    scan(b.lower);
  }
  if (!(xmin < xmax)) throw ConfigError("plot: need at least two distinct sample times");
  for (const auto& r : refs) ymax = std::max(ymax, r.y);
  const double ymin = 0.0;
  ymax *= 1.06;

  auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * PW; };
  auto py = [&](double y) { return MT + PH - (y - ymin) / (ymax - ymin) * PH; };
  auto fmt_px = [](double v) {
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(2);
    o << v;
    return o.str();
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

  // Axes frame and ticks (five intervals each way).
  svg << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << PW
      << "\" height=\"" << PH << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    svg << "<line x1=\"" << fmt_px(px(xv)) << "\" y1=\"" << MT + PH
        << "\" x2=\"" << fmt_px(px(xv)) << "\" y2=\"" << MT + PH + 6
        << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << fmt_px(px(xv)) << "\" y=\"" << MT + PH + 22
        << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#333\">"
        << fmt_label(xv) << "</text>\n";
    svg << "<line x1=\"" << ML - 6 << "\" y1=\"" << fmt_px(py(yv))
        << "\" x2=\"" << ML << "\" y2=\"" << fmt_px(py(yv))
        << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << ML - 10 << "\" y=\"" << fmt_px(py(yv) + 4)
        << "\" font-size=\"13\" text-anchor=\"end\" fill=\"#333\">"
        << fmt_label(yv) << "</text>\n";
  }
  svg << "<text x=\"" << ML + PW / 2 << "\" y=\"" << H - 12
      << "\" font-size=\"15\" text-anchor=\"middle\" fill=\"#333\">" << x_label
      << "</text>\n";
  svg << "<text x=\"18\" y=\"" << MT + PH / 2
      << "\" font-size=\"15\" text-anchor=\"middle\" fill=\"#333\" transform=\"rotate(-90 18 "
      << MT + PH / 2 << ")\">" << y_label << "</text>\n";

  for (const auto& b : bands) {
    svg << "<polygon fill=\"" << b.color << "\" fill-opacity=\"0.45\" stroke=\"none\" points=\"";
    for (const auto& [x, y] : b.upper)
      svg << fmt_px(px(x)) << ',' << fmt_px(py(y)) << ' ';
    for (auto it = b.lower.rbegin(); it != b.lower.rend(); ++it)
      svg << fmt_px(px(it->first)) << ',' << fmt_px(py(it->second)) << ' ';
    svg << "\"/>\n";
  }
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.2\" points=\"";
    for (const auto& [x, y] : s.points)
      svg << fmt_px(px(x)) << ',' << fmt_px(py(y)) << ' ';
    svg << "\"/>\n";
  }
  for (const auto& r : refs) {
    svg << "<line x1=\"" << ML << "\" y1=\"" << fmt_px(py(r.y)) << "\" x2=\""
        << ML + PW << "\" y2=\"" << fmt_px(py(r.y))
        << "\" stroke=\"#555\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << ML + PW - 6 << "\" y=\"" << fmt_px(py(r.y) - 6)
        << "\" font-size=\"13\" text-anchor=\"end\" fill=\"#555\">" << r.label
        << "</text>\n";
  }

  // Legend, top right inside the frame.
  double ly = MT + 18.0;
  auto legend = [&](const std::string& color, const std::string& label, bool band) {
    if (band)
      svg << "<rect x=\"" << ML + PW - 170 << "\" y=\"" << ly - 9
          << "\" width=\"26\" height=\"10\" fill=\"" << color
          << "\" fill-opacity=\"0.45\"/>\n";
    else
      svg << "<line x1=\"" << ML + PW - 170 << "\" y1=\"" << ly - 4
          << "\" x2=\"" << ML + PW - 144 << "\" y2=\"" << ly - 4
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ML + PW - 138 << "\" y=\"" << ly
        << "\" font-size=\"13\" fill=\"#333\">" << label << "</text>\n";
    ly += 18.0;
  };
  for (const auto& b : bands) legend(b.color, b.label, true);
  for (const auto& s : series) legend(s.color, s.label, false);

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace detail

// Chart of one run: doubled standard deviations of both quadratures against
// time in microseconds, with the squeezing boundary at sqrt(2) ("1.41").
inline std::string svg_plot(const Trajectory& traj, double omega) {
  if (traj.samples.size() < 2)
    throw ConfigError("plot: need at least two samples");
  const double period = 2.0 * PI / omega;
  const double span = traj.samples.back().state.t;
  const bool banded = span / period > 50.0;

  std::vector<detail::PlotSeries> series;
  std::vector<detail::PlotBand> bands;
  if (banded) {
    const Envelope env = envelope(traj, omega);
    detail::PlotBand bx{"2 sigma x (per-period range)", "#1f77b4", {}, {}};
    detail::PlotBand bp{"2 sigma p (per-period range)", "#d62728", {}, {}};
    for (const auto& pe : env.periods) {
      const double tc = (static_cast<double>(pe.period_index) + 0.5) * period * 1e6;
      bx.upper.push_back({tc, pe.max_x});
      bx.lower.push_back({tc, pe.min_x});
      bp.upper.push_back({tc, pe.max_p});
      bp.lower.push_back({tc, pe.min_p});
    }
    bands.push_back(std::move(bx));
    bands.push_back(std::move(bp));
  } else {
    detail::PlotSeries sx{"2 sigma x", "#1f77b4", {}};
    detail::PlotSeries sp{"2 sigma p", "#d62728", {}};
    for (const auto& s : traj.samples) {
      const SqueezingReport r = report(s.state);
      sx.points.push_back({s.state.t * 1e6, r.two_sigma_x});
      sp.points.push_back({s.state.t * 1e6, r.two_sigma_p});
    }
    series.push_back(std::move(sx));
    series.push_back(std::move(sp));
  }
  return detail::svg_chart(series, bands, {detail::RefLine{SQRT2, "1.41"}},
                           "time (us)", "2 sigma");
}

// Chart of the entanglement witness against time with the boundary at 1.
inline std::string svg_plot_duan(const TwoModeTrajectory& tm) {
  if (tm.samples.size() < 2)
    throw ConfigError("plot: need at least two samples");
  detail::PlotSeries sd{"Var(X+) + Var(P-)", "#2ca02c", {}};
  for (const auto& s : tm.samples) sd.points.push_back({s.t * 1e6, s.duan});
  return detail::svg_chart({sd}, {}, {detail::RefLine{1.0, "1"}}, "time (us)",
                           "variance sum");
}

}  // namespace strobe
