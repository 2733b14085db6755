// Copyright 2026 The Timbre Align Authors. All Rights Reserved.
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

#include "timbre/plot.h"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>

namespace timbre {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                                 "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

constexpr double kPanelWidth = 760.0;
constexpr double kPanelHeight = 220.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 60.0;
constexpr double kLegendHeight = 30.0;

std::string escape(const std::string& s) {
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

template <typename F>
std::vector<std::string> ordered_unique(const std::vector<AggregateScore>& scores, F key) {
  std::vector<std::string> out;
  for (const auto& s : scores) {
    std::string k = key(s);
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(std::move(k));
  }
  return out;
}

std::string series_of(const AggregateScore& s) { return s.strategy + " / " + s.distance; }

}  // namespace

std::string render_svg(const std::vector<AggregateScore>& scores) {
  const auto metrics = ordered_unique(scores, [](const auto& s) { return s.metric; });
  const auto reps = ordered_unique(scores, [](const auto& s) { return s.representation; });
  const auto series = ordered_unique(scores, series_of);

  const double panel_total = kMarginTop + kPanelHeight + kMarginBottom;
  const double width = kMarginLeft + kPanelWidth + 20.0;
  const double height =
      kLegendHeight + panel_total * static_cast<double>(std::max<std::size_t>(metrics.size(), 1));

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"11\">\n",
      width, height, width, height);
  svg += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", width, height);

  for (std::size_t k = 0; k < series.size(); ++k) {
    const double x = kMarginLeft + 150.0 * static_cast<double>(k);
    svg += fmt::format("<rect x=\"{:.1f}\" y=\"10\" width=\"12\" height=\"12\" fill=\"{}\"/>\n", x,
                       kPalette[k % kPalette.size()]);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"20\">{}</text>\n", x + 16.0, escape(series[k]));
  }

  for (std::size_t m = 0; m < metrics.size(); ++m) {
    const double top = kLegendHeight + panel_total * static_cast<double>(m) + kMarginTop;
    double lo = 0.0, hi = 0.0;
    for (const auto& s : scores) {
      if (s.metric == metrics[m] && s.value) {
        lo = std::min(lo, *s.value);
        hi = std::max(hi, *s.value);
      }
    }
    if (hi - lo <= 0.0) hi = lo + 1.0;
    const auto y_of = [&](double v) { return top + kPanelHeight * (hi - v) / (hi - lo); };

    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"13\" font-weight=\"bold\">{}</text>\n",
                       kMarginLeft, top - 10.0, escape(metrics[m]));
    for (int t = 0; t <= 4; ++t) {
      const double v = lo + (hi - lo) * t / 4.0;
      const double y = y_of(v);
      svg += fmt::format(
          "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#dddddd\"/>\n",
          kMarginLeft, y, kMarginLeft + kPanelWidth, y);
      svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.2f}</text>\n",
                         kMarginLeft - 6.0, y + 4.0, v);
    }
    svg += fmt::format(
        "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"black\"/>\n",
        kMarginLeft, y_of(0.0), kMarginLeft + kPanelWidth, y_of(0.0));

    const double group = kPanelWidth / static_cast<double>(std::max<std::size_t>(reps.size(), 1));
    const double bar = group * 0.8 / static_cast<double>(std::max<std::size_t>(series.size(), 1));
    for (std::size_t r = 0; r < reps.size(); ++r) {
      const double gx = kMarginLeft + group * static_cast<double>(r);
      svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
                         gx + group / 2.0, top + kPanelHeight + 18.0, escape(reps[r]));
      for (const auto& s : scores) {
        if (s.metric != metrics[m] || s.representation != reps[r] || !s.value) continue;
        const auto k = static_cast<std::size_t>(
            std::find(series.begin(), series.end(), series_of(s)) - series.begin());
        const double x = gx + group * 0.1 + bar * static_cast<double>(k);
        const double y0 = y_of(std::max(0.0, *s.value));
        const double y1 = y_of(std::min(0.0, *s.value));
        svg += fmt::format(
            "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"{}\">"
            "<title>{} {}: {:.4f}</title></rect>\n",
            x, y0, bar, y1 - y0, kPalette[k % kPalette.size()], escape(reps[r]),
            escape(series[k]), *s.value);
      }
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace timbre
