// Copyright 2026 The risfas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "risfas/errors.hpp"
#include "risfas/experiments.hpp"

namespace risfas {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 230.0;  // room for the legend
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
// Values below this are not drawn on the log axis.
constexpr double kFloor = 1e-12;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
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

}  // namespace

std::string render_svg(const std::vector<PerformanceCurve>& curves, std::string_view title) {
  if (curves.empty()) throw DomainError("no curves to plot");

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = 1.0;
  double y_hi = kFloor;
  for (const PerformanceCurve& c : curves) {
    if (c.gamma_bar_db.size() != c.value.size()) throw DimensionError("curve abscissa/value size mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) {
      x_lo = std::min(x_lo, c.gamma_bar_db[i]);
      x_hi = std::max(x_hi, c.gamma_bar_db[i]);
      if (c.value[i] >= kFloor) {
        y_lo = std::min(y_lo, c.value[i]);
        y_hi = std::max(y_hi, c.value[i]);
      }
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0.0, x_hi = 1.0;
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  const double d_lo = std::floor(std::log10(std::min(y_lo, y_hi)));
  double d_hi = std::ceil(std::log10(std::max(y_lo, y_hi)));
  if (d_hi <= d_lo) d_hi = d_lo + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return kTop + (d_hi - std::log10(y)) / (d_hi - d_lo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
     << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << escape(title) << "</text>\n";
  }
  os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
     << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Decade grid on y, ten ticks on x.
  for (double d = d_lo; d <= d_hi + 0.5; d += 1.0) {
    const double y = py(std::pow(10.0, d));
    os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\""
       << num(y) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">1e"
       << static_cast<int>(d) << "</text>\n";
  }
  for (int i = 0; i <= 10; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / 10.0;
    const double x = px(xv);
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x) << "\" y2=\""
       << num(kTop + ph) << "\" stroke=\"#eeeeee\"/>\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::round(xv * 100.0) / 100.0);
    os << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">" << buf
       << "</text>\n";
  }
  os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12)
     << "\" text-anchor=\"middle\">average SNR (dB)</text>\n";
  os << "<text transform=\"translate(18 " << num(kTop + ph / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">probability</text>\n";

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const PerformanceCurve& c = curves[ci];
    const char* color = kPalette[ci % std::size(kPalette)];
    const bool dashed = c.label.find("/mc") != std::string::npos || c.label.find("/asymptotic") != std::string::npos;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\""
       << (dashed ? " stroke-dasharray=\"5 3\"" : "") << " points=\"";
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!(c.value[i] >= kFloor)) continue;
      if (!first) os << ' ';
      os << num(px(c.gamma_bar_db[i])) << ',' << num(py(c.value[i]));
      first = false;
    }
    os << "\"/>\n";
    const double ly = kTop + 10 + 18.0 * static_cast<double>(ci);
    const double lx = kLeft + pw + 14;
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24) << "\" y2=\"" << num(ly)
       << "\" stroke=\"" << color << "\" stroke-width=\"1.6\"" << (dashed ? " stroke-dasharray=\"5 3\"" : "")
       << "/>\n";
    os << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\">" << escape(c.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void emit_svg(const std::vector<PerformanceCurve>& curves, const std::filesystem::path& path,
              std::string_view title) {
  const std::string doc = render_svg(curves, title);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << doc;
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace risfas
