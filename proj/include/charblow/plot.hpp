#pragma once

// Minimal static SVG line charts.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace charblow::plot {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};

struct Chart {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool logx = false;
  bool logy = false;
  std::vector<Series> series;
};

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace detail

inline std::string render_svg(const Chart& chart) {
  constexpr double W = 720, H = 460, ml = 90, mr = 160, mt = 40, mb = 60;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  auto tx = [&](double v) { return chart.logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return chart.logy ? std::log10(v) : v; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!chart.logx || x > 0) && (!chart.logy || y > 0);
  };

  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : chart.series)
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!usable(s.x[k], s.y[k])) continue;
      x0 = std::min(x0, tx(s.x[k]));
      x1 = std::max(x1, tx(s.x[k]));
      y0 = std::min(y0, ty(s.y[k]));
      y1 = std::max(y1, ty(s.y[k]));
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1;
  if (!(y0 <= y1)) y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-300) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-300) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double v) { return ml + (tx(v) - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double v) { return H - mb - (ty(v) - y0) / (y1 - y0) * (H - mt - mb); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << detail::escape(chart.title) << "</text>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
     << H - mt - mb << "\" fill=\"none\" stroke=\"#333\"/>\n";

  // Ticks: five even steps on linear axes, decades on log axes.
  auto ticks = [](double lo, double hi, bool log) {
    std::vector<double> t;
    if (log && hi - lo >= 1.0) {
      for (double d = std::ceil(lo); d <= hi; d += std::max(1.0, std::floor((hi - lo) / 6.0))) t.push_back(d);
    } else {
      for (int k = 0; k <= 4; ++k) t.push_back(lo + (hi - lo) * k / 4.0);
    }
    return t;
  };
  for (double fx : ticks(x0, x1, chart.logx)) {
    const double sx = ml + (fx - x0) / (x1 - x0) * (W - ml - mr);
    os << "<text x=\"" << sx << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">"
       << detail::num(chart.logx ? std::pow(10.0, fx) : fx) << "</text>\n";
  }
  for (double fy : ticks(y0, y1, chart.logy)) {
    const double sy = H - mb - (fy - y0) / (y1 - y0) * (H - mt - mb);
    os << "<text x=\"" << ml - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">"
       << detail::num(chart.logy ? std::pow(10.0, fy) : fy) << "</text>\n";
  }
  os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
     << detail::escape(chart.xlabel) << "</text>\n";
  os << "<text transform=\"translate(14," << (mt + H - mb) / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << detail::escape(chart.ylabel) << "</text>\n";

  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const auto& ser = chart.series[s];
    const char* col = colors[s % 6];
    std::ostringstream pts;
    for (std::size_t k = 0; k < std::min(ser.x.size(), ser.y.size()); ++k) {
      if (!usable(ser.x[k], ser.y[k])) continue;
      pts << px(ser.x[k]) << "," << py(ser.y[k]) << " ";
      if (ser.markers)
        os << "<circle cx=\"" << px(ser.x[k]) << "\" cy=\"" << py(ser.y[k]) << "\" r=\"3.5\" fill=\""
           << col << "\"/>\n";
    }
    if (!ser.markers)
      os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\""
         << pts.str() << "\"/>\n";
    os << "<text x=\"" << W - mr + 10 << "\" y=\"" << mt + 16 * (s + 1) << "\" fill=\"" << col
       << "\">" << detail::escape(ser.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace charblow::plot
