// Copyright 2026 The corpdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "corpdist/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace corpdist {
namespace {

constexpr double kPanelWidth = 720.0;
constexpr double kPanelHeight = 220.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 40.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

double quartile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void draw_panel(std::ostream& out, const BoxPanel& panel, double top) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& g : panel.groups) {
    for (double v : g) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double plot_top = top + kMarginTop;
  const double plot_h = kPanelHeight - kMarginTop - kMarginBottom;
  const double plot_w = kPanelWidth - kMarginLeft - kMarginRight;
  auto y_of = [&](double v) { return plot_top + plot_h * (hi - v) / (hi - lo); };

  out << "<text x=\"" << num(kMarginLeft) << "\" y=\"" << num(top + 18)
      << "\" font-size=\"14\">" << escape(panel.title) << "</text>\n";
  out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(plot_top)
      << "\" width=\"" << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"#999\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    out << "<text x=\"" << num(kMarginLeft - 6) << "\" y=\"" << num(y_of(v) + 4)
        << "\" font-size=\"10\" text-anchor=\"end\">" << label_num(v)
        << "</text>\n";
  }
  out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\""
      << num(top + kPanelHeight - 6)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << escape(panel.x_label)
      << "</text>\n";

  const std::size_t n = panel.groups.size();
  if (n == 0) return;
  const double slot = plot_w / static_cast<double>(n);
  const double box_w = std::min(30.0, slot * 0.6);
  for (std::size_t g = 0; g < n; ++g) {
    const double cx = kMarginLeft + slot * (static_cast<double>(g) + 0.5);
    if (g < panel.labels.size()) {
      out << "<text x=\"" << num(cx) << "\" y=\"" << num(plot_top + plot_h + 14)
          << "\" font-size=\"10\" text-anchor=\"middle\">"
          << escape(panel.labels[g]) << "</text>\n";
    }
    std::vector<double> v = panel.groups[g];
    if (v.empty()) continue;
    std::sort(v.begin(), v.end());
    const double q1 = quartile(v, 0.25), med = quartile(v, 0.5),
                 q3 = quartile(v, 0.75);
    const double fence_lo = q1 - 1.5 * (q3 - q1);
    const double fence_hi = q3 + 1.5 * (q3 - q1);
    double wlo = q1, whi = q3;
    for (double x : v) {
      if (x >= fence_lo) wlo = std::min(wlo, x);
      if (x <= fence_hi) whi = std::max(whi, x);
    }
    out << "<line x1=\"" << num(cx) << "\" x2=\"" << num(cx) << "\" y1=\""
        << num(y_of(wlo)) << "\" y2=\"" << num(y_of(whi))
        << "\" stroke=\"#333\"/>\n";
    out << "<rect x=\"" << num(cx - box_w / 2) << "\" y=\"" << num(y_of(q3))
        << "\" width=\"" << num(box_w) << "\" height=\""
        << num(std::max(0.5, y_of(q1) - y_of(q3)))
        << "\" fill=\"#9ecae1\" stroke=\"#333\"/>\n";
    out << "<line x1=\"" << num(cx - box_w / 2) << "\" x2=\""
        << num(cx + box_w / 2) << "\" y1=\"" << num(y_of(med)) << "\" y2=\""
        << num(y_of(med)) << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    for (double x : v) {
      if (x < fence_lo || x > fence_hi) {
        out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(y_of(x))
            << "\" r=\"2\" fill=\"none\" stroke=\"#333\"/>\n";
      }
    }
  }
}

}  // namespace

void write_boxplot_svg(std::ostream& out, std::span<const BoxPanel> panels) {
  const double height = kPanelHeight * static_cast<double>(panels.size());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kPanelWidth)
      << "\" height=\"" << num(height) << "\" font-family=\"sans-serif\">\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    draw_panel(out, panels[i], kPanelHeight * static_cast<double>(i));
  }
  out << "</svg>\n";
}

}  // namespace corpdist
