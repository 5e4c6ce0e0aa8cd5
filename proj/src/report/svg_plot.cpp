// SPDX-License-Identifier: Apache-2.0
#include "phaselab/report/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "phaselab/errors.hpp"

namespace phaselab::report {

namespace {

constexpr double kWidth = 720.0, kHeight = 560.0;
constexpr double kLeft = 70.0, kRight = 24.0, kTop = 40.0, kBottom = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

double map_x(double delta) {
  return kLeft + delta * (kWidth - kLeft - kRight);
}
double map_y(double rho) {
  return kHeight - kBottom - rho * (kHeight - kTop - kBottom);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void write_phase_plot_svg(const std::filesystem::path& path,
                          const std::vector<PlotSeries>& series,
                          const std::string& title) {
  std::size_t drawable = 0;
  for (const auto& s : series) drawable += s.points.empty() ? 0 : 1;
  if (drawable == 0) throw InputError("write_phase_plot_svg: nothing to plot");

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write SVG: " + path.string());

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  if (!title.empty())
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << escape(title) << "</text>\n";

  // Frame and ticks at 0.1 intervals.
  out << "<line x1=\"" << map_x(0) << "\" y1=\"" << map_y(0) << "\" x2=\""
      << map_x(1) << "\" y2=\"" << map_y(0)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << map_x(0) << "\" y1=\"" << map_y(0) << "\" x2=\""
      << map_x(0) << "\" y2=\"" << map_y(1)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 10; ++i) {
    double v = 0.1 * i;
    out << "<line x1=\"" << map_x(v) << "\" y1=\"" << map_y(0) << "\" x2=\""
        << map_x(v) << "\" y2=\"" << map_y(0) + 5
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << map_x(v) << "\" y=\"" << map_y(0) + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << num(v) << "</text>\n";
    out << "<line x1=\"" << map_x(0) - 5 << "\" y1=\"" << map_y(v) << "\" x2=\""
        << map_x(0) << "\" y2=\"" << map_y(v)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << map_x(0) - 9 << "\" y=\"" << map_y(v) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << num(v) << "</text>\n";
  }
  out << "<text x=\"" << map_x(0.5) << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">delta = n/N</text>\n";
  out << "<text x=\"18\" y=\"" << map_y(0.5)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 "
      << map_y(0.5) << ")\">rho = k/n</text>\n";

  std::size_t color_idx = 0;
  double legend_y = kTop + 12.0;
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    const char* color = kPalette[color_idx % (sizeof(kPalette) / sizeof(*kPalette))];
    ++color_idx;

    auto pts = s.points;
    std::sort(pts.begin(), pts.end());
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out << ' ';
      out << num(map_x(pts[i].first)) << ',' << num(map_y(pts[i].second));
    }
    out << "\"/>\n";

    double lx = kWidth - kRight - 190.0;
    out << "<line x1=\"" << lx << "\" y1=\"" << legend_y - 4 << "\" x2=\""
        << lx + 26 << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 32 << "\" y=\"" << legend_y
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
        << "</text>\n";
    legend_y += 17.0;
  }
  out << "</svg>\n";
  if (!out) throw IoError("SVG write failed: " + path.string());
}

}  // namespace phaselab::report
