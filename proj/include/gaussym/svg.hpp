// Copyright 2026 The Gaussym Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAUSSYM_SVG_HPP
#define GAUSSYM_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "gaussym/csv.hpp"
#include "gaussym/types.hpp"

// Minimal deterministic SVG renderer for curve tables: fixed canvas, fixed
// fonts, no timestamps, so output files diff cleanly across runs.  Column 0
// is the abscissa; every other column becomes one polyline.

namespace gaussym::io {

enum class PlotStyle { lines, points };

namespace detail {

inline std::string coord(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

inline const char* palette(std::size_t i) {
  static const char* kColors[8] = {"#1b6ca8", "#c0392b", "#27ae60",
                                   "#8e44ad", "#d35400", "#16a085",
                                   "#7f8c8d", "#2c3e50"};
  return kColors[i % 8];
}

}  // namespace detail

inline void render_svg(const Table& t, std::ostream& os,
                       PlotStyle style = PlotStyle::lines) {
  if (t.header.size() < 2) {
    throw FormatError("plot needs at least two columns");
  }
  if (t.rows.empty()) throw FormatError("plot needs at least one row");

  const double width = 640, height = 480;
  const double ml = 70, mr = 20, mt = 20, mb = 50;
  double xmin = t.rows[0][0], xmax = xmin;
  double ymin = t.rows[0][1], ymax = ymin;
  for (const auto& r : t.rows) {
    xmin = std::min(xmin, r[0]);
    xmax = std::max(xmax, r[0]);
    for (std::size_t c = 1; c < r.size(); ++c) {
      ymin = std::min(ymin, r[c]);
      ymax = std::max(ymax, r[c]);
    }
  }
  if (xmax - xmin <= 0) xmax = xmin + 1;
  if (ymax - ymin <= 0) ymax = ymin + 1;
  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
        "height=\"480\" viewBox=\"0 0 640 480\">\n";
  os << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  // axes
  os << "<line x1=\"" << detail::coord(ml) << "\" y1=\""
     << detail::coord(height - mb) << "\" x2=\"" << detail::coord(width - mr)
     << "\" y2=\"" << detail::coord(height - mb)
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << detail::coord(ml) << "\" y1=\""
     << detail::coord(mt) << "\" x2=\"" << detail::coord(ml) << "\" y2=\""
     << detail::coord(height - mb)
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  // extremal tick labels
  os << "<text x=\"" << detail::coord(ml) << "\" y=\""
     << detail::coord(height - mb + 18)
     << "\" font-family=\"monospace\" font-size=\"12\">"
     << format_number(xmin) << "</text>\n";
  os << "<text x=\"" << detail::coord(width - mr - 60) << "\" y=\""
     << detail::coord(height - mb + 18)
     << "\" font-family=\"monospace\" font-size=\"12\">"
     << format_number(xmax) << "</text>\n";
  os << "<text x=\"4\" y=\"" << detail::coord(height - mb)
     << "\" font-family=\"monospace\" font-size=\"12\">"
     << format_number(ymin) << "</text>\n";
  os << "<text x=\"4\" y=\"" << detail::coord(mt + 10)
     << "\" font-family=\"monospace\" font-size=\"12\">"
     << format_number(ymax) << "</text>\n";
  // axis names from the header
  os << "<text x=\"" << detail::coord(width / 2) << "\" y=\""
     << detail::coord(height - 12)
     << "\" font-family=\"monospace\" font-size=\"13\">" << t.header[0]
     << "</text>\n";

  for (std::size_t c = 1; c < t.header.size(); ++c) {
    const char* color = detail::palette(c - 1);
    if (style == PlotStyle::lines) {
      os << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& r : t.rows) {
        os << detail::coord(px(r[0])) << ',' << detail::coord(py(r[c]))
           << ' ';
      }
      os << "\"/>\n";
    } else {
      for (const auto& r : t.rows) {
        os << "<circle cx=\"" << detail::coord(px(r[0])) << "\" cy=\""
           << detail::coord(py(r[c])) << "\" r=\"2.5\" fill=\"" << color
           << "\"/>\n";
      }
    }
    // legend entry
    const double ly = mt + 16 + 16 * static_cast<double>(c - 1);
    os << "<rect x=\"" << detail::coord(width - mr - 150) << "\" y=\""
       << detail::coord(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
       << color << "\"/>\n";
    os << "<text x=\"" << detail::coord(width - mr - 135) << "\" y=\""
       << detail::coord(ly)
       << "\" font-family=\"monospace\" font-size=\"12\">" << t.header[c]
       << "</text>\n";
  }
  os << "</svg>\n";
}

inline void render_svg_file(const Table& t, const std::string& path,
                            PlotStyle style = PlotStyle::lines) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  render_svg(t, os, style);
}

}  // namespace gaussym::io

#endif  // GAUSSYM_SVG_HPP
