// Copyright 2026 The eclk Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eclk/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>

namespace eclk {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void WriteSvgPlot(const std::vector<Trace>& traces, const PlotOptions& opt,
                  std::ostream& out) {
  double x_max = 1.0;
  double y_min = 0.0;  // log10 of the floor at most
  double y_max = -300.0;
  std::vector<const Trace*> drawable;
  for (const Trace& tr : traces) {
    if (tr.rows.empty()) {
      std::cerr << "plot: skipping empty trace '" << tr.label << "'\n";
      continue;
    }
    drawable.push_back(&tr);
    for (const TraceRow& row : tr.rows) {
      const double x = opt.x_bits ? static_cast<double>(row.cum_bits_node)
                                  : static_cast<double>(row.iter);
      x_max = std::max(x_max, x);
      const double y = std::log10(std::max(row.subopt, opt.y_floor));
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (drawable.empty()) y_max = 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  // round the log range outward to whole decades
  y_min = std::floor(y_min);
  y_max = std::ceil(y_max);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + plot_w * (x / x_max); };
  const auto sy = [&](double logy) {
    return kTop + plot_h * (y_max - logy) / (y_max - y_min);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << opt.title << "</text>\n";

  // frame
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  // y ticks at whole decades (thinned to at most 12 labels)
  const int decades = static_cast<int>(y_max - y_min);
  const int step = std::max(1, (decades + 11) / 12);
  for (int dec = 0; dec <= decades; dec += step) {
    const double logy = y_max - dec;
    const double yy = sy(logy);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << yy << "\" x2=\"" << kLeft
        << "\" y2=\"" << yy << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << yy << "\" x2=\"" << kLeft + plot_w
        << "\" y2=\"" << yy << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << kLeft - 10 << "\" y=\"" << yy + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e"
        << static_cast<int>(logy) << "</text>\n";
  }

  // x ticks, 5 divisions
  for (int i = 0; i <= 5; ++i) {
    const double x = x_max * i / 5.0;
    const double xx = sx(x);
    out << "<line x1=\"" << xx << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << xx
        << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << xx << "\" y=\"" << kTop + plot_h + 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << Num(x) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << (opt.x_bits ? "cumulative bits per node" : "iterations") << "</text>\n";

  size_t color = 0;
  for (const Trace* tr : drawable) {
    out << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 8]
        << "\" stroke-width=\"1.6\" points=\"";
    for (const TraceRow& row : tr->rows) {
      const double x = opt.x_bits ? static_cast<double>(row.cum_bits_node)
                                  : static_cast<double>(row.iter);
      const double y = std::log10(std::max(row.subopt, opt.y_floor));
      out << Num(sx(x)) << ',' << Num(sy(y)) << ' ';
    }
    out << "\"/>\n";
    // legend entry
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(color);
    out << "<line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + plot_w - 122 << "\" y2=\"" << ly << "\" stroke=\""
        << kPalette[color % 8] << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + plot_w - 116 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << tr->label
        << "</text>\n";
    ++color;
  }
  out << "</svg>\n";
}

void WriteSvgPlotFile(const std::vector<Trace>& traces, const PlotOptions& opt,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plot file: " + path);
  WriteSvgPlot(traces, opt, out);
}

}  // namespace eclk
