#pragma once

// Minimal standalone SVG 1.1 line, scatter and step plots.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "magnon/error.hpp"
#include "magnon/lab/table.hpp"

namespace magnon::lab {

enum class SeriesStyle { Line, Scatter, Step };

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  SeriesStyle style = SeriesStyle::Line;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_log = false;
  std::vector<Series> series;
  double width = 640.0;
  double height = 480.0;
};

namespace svg_detail {

inline constexpr double kLeft = 72.0, kRight = 24.0, kTop = 40.0, kBottom = 56.0;
inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline std::string label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

inline double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double nice = f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0;
  return nice * mag;
}

/// Axis in plotting coordinates (log10 of the data in log mode).
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> ticks;
};

inline Axis make_axis(double lo, double hi, bool log_mode) {
  Axis a;
  if (!(lo <= hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (log_mode) {
    a.lo = std::floor(lo);
    a.hi = std::ceil(hi);
    if (a.hi <= a.lo) a.hi = a.lo + 1.0;
    const double stride = std::max(1.0, std::ceil((a.hi - a.lo) / 8.0));
    for (double t = a.lo; t <= a.hi + 1e-9; t += stride) a.ticks.push_back(t);
    return a;
  }
  if (hi == lo) {
    const double pad = lo == 0.0 ? 0.5 : 0.1 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
  const double step = nice_step(hi - lo);
  a.lo = std::floor(lo / step) * step;
  a.hi = std::ceil(hi / step) * step;
  const auto count = static_cast<long>(std::llround((a.hi - a.lo) / step));
  for (long i = 0; i <= count; ++i) a.ticks.push_back(a.lo + static_cast<double>(i) * step);
  return a;
}

} // namespace svg_detail

inline std::string render_svg(const PlotSpec& plot) {
  using namespace svg_detail;
  const bool lg = plot.log_log;
  auto tx = [lg](double v) { return lg ? std::log10(v) : v; };
  auto usable = [lg](double x, double y) { return std::isfinite(x) && std::isfinite(y) && (!lg || (x > 0.0 && y > 0.0)); };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : plot.series) {
    if (s.x.size() != s.y.size()) throw ShapeError("series " + s.name + " has mismatched x and y lengths");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, tx(s.y[i]));
      ymax = std::max(ymax, tx(s.y[i]));
    }
  }
  const Axis ax = make_axis(xmin, xmax, lg);
  const Axis ay = make_axis(ymin, ymax, lg);

  const double pw = plot.width - kLeft - kRight;
  const double ph = plot.height - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double v) { return kTop + ph - (v - ay.lo) / (ay.hi - ay.lo) * ph; };
  auto tick_text = [lg](double t) { return lg ? "1e" + label(t) : label(t); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(plot.width) + "\" height=\"" +
         num(plot.height) + "\" viewBox=\"0 0 " + num(plot.width) + " " + num(plot.height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(plot.width) + "\" height=\"" + num(plot.height) + "\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(plot.width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
         escape(plot.title) + "</text>\n";

  out += "<g font-family=\"sans-serif\" font-size=\"11\" stroke=\"#000\" stroke-width=\"1\">\n";
  out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\"/>\n";
  for (double t : ax.ticks) {
    const double x = px(t);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(x) + "\" y2=\"" + num(kTop + ph + 5) + "\"/>\n";
    out += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 18) + "\" text-anchor=\"middle\" stroke=\"none\">" +
           escape(tick_text(t)) + "</text>\n";
  }
  for (double t : ay.ticks) {
    const double y = py(t);
    out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(y) + "\"/>\n";
    out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\" stroke=\"none\">" +
           escape(tick_text(t)) + "</text>\n";
  }
  out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(plot.height - 14) +
         "\" text-anchor=\"middle\" stroke=\"none\" font-size=\"13\">" + escape(plot.x_label) + "</text>\n";
  out += "<text x=\"16\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" stroke=\"none\" font-size=\"13\" transform=\"rotate(-90 16 " +
         num(kTop + ph / 2) + ")\">" + escape(plot.y_label) + "</text>\n";
  out += "</g>\n";

  std::size_t legend_row = 0;
  for (std::size_t si = 0; si < plot.series.size(); ++si) {
    const auto& s = plot.series[si];
    const std::string color = kPalette[si % std::size(kPalette)];
    out += "<g class=\"series\" data-name=\"" + escape(s.name) + "\">\n";
    if (s.style == SeriesStyle::Scatter) {
      out += "<g fill=\"" + color + "\" stroke=\"none\">\n";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!usable(s.x[i], s.y[i])) continue;
        out += "<circle cx=\"" + num(px(tx(s.x[i]))) + "\" cy=\"" + num(py(tx(s.y[i]))) + "\" r=\"1\"/>\n";
      }
      out += "</g>\n";
    } else {
      std::string pts;
      double prev_y = 0.0;
      bool first = true;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!usable(s.x[i], s.y[i])) continue;
        const double x = px(tx(s.x[i]));
        const double y = py(tx(s.y[i]));
        if (s.style == SeriesStyle::Step && !first) pts += num(x) + "," + num(prev_y) + " ";
        pts += num(x) + "," + num(y) + " ";
        prev_y = y;
        first = false;
      }
      if (!pts.empty()) pts.pop_back();
      out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
      if (s.x.size() == 1 && usable(s.x[0], s.y[0]))
        out += "<circle cx=\"" + num(px(tx(s.x[0]))) + "\" cy=\"" + num(py(tx(s.y[0]))) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
    }
    out += "</g>\n";
    if (s.name.empty()) continue;
    const double ly = kTop + 14.0 + 16.0 * static_cast<double>(legend_row++);
    out += "<line x1=\"" + num(kLeft + pw - 130) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(kLeft + pw - 110) + "\" y2=\"" +
           num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"3\"/>\n";
    out += "<text x=\"" + num(kLeft + pw - 104) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(s.name) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

inline void emit_svg(const PlotSpec& plot, const std::filesystem::path& path) { write_text(path, render_svg(plot)); }

} // namespace magnon::lab
