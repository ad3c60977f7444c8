// Copyright 2026 The InlineScope Authors.
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

#include "inlinescope/analysis.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "inlinescope/error.h"

namespace inlinescope {
namespace {

void RequireSamples(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "no samples");
  for (double v : values) {
    if (std::isnan(v)) throw Error(ErrorCode::kInvalidArgument, "NaN sample");
  }
}

std::string Shortest(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string Fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

std::string XmlEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::vector<double> Column(const FeatureTable& table, int index) {
  std::vector<double> column;
  column.reserve(table.functions.size());
  for (const auto& [name, vec] : table.functions) column.push_back(vec.slot(index));
  return column;
}

}  // namespace

std::vector<double> Normalize(std::span<const double> values) {
  RequireSamples(values);
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double min = *lo;
  double range = *hi - *lo;
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(range > 0 ? (v - min) / range : 0.0);
  return out;
}

double Mean(std::span<const double> values) {
  RequireSamples(values);
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double Median(std::span<const double> values) {
  RequireSamples(values);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

SigmaFilter ThreeSigmaFilter(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples,
                "three-sigma filter needs at least two samples, got " +
                    std::to_string(values.size()));
  }
  RequireSamples(values);
  double mean = Mean(values);
  double squares = 0;
  for (double v : values) squares += (v - mean) * (v - mean);
  double sigma = std::sqrt(squares / static_cast<double>(values.size()));
  SigmaFilter result;
  for (double v : values) {
    if (sigma == 0 || std::abs(v - mean) <= 3 * sigma) {
      result.kept.push_back(v);
    } else {
      result.removed.push_back(v);
    }
  }
  return result;
}

GapResult CompareSamples(std::span<const double> a, std::span<const double> b) {
  RequireSamples(a);
  RequireSamples(b);
  std::vector<double> both(a.begin(), a.end());
  both.insert(both.end(), b.begin(), b.end());
  std::vector<double> scaled = Normalize(both);
  std::span<const double> na(scaled.data(), a.size());
  std::span<const double> nb(scaled.data() + a.size(), b.size());
  SigmaFilter fa = ThreeSigmaFilter(na);
  SigmaFilter fb = ThreeSigmaFilter(nb);
  GapResult gap;
  gap.median_a = Median(fa.kept);
  gap.median_b = Median(fb.kept);
  gap.median_gap = std::abs(gap.median_a - gap.median_b);
  gap.mean_gap = std::abs(Mean(fa.kept) - Mean(fb.kept));
  gap.kept_a = fa.kept.size();
  gap.kept_b = fb.kept.size();
  return gap;
}

double MedianGap(std::span<const double> a, std::span<const double> b) {
  return CompareSamples(a, b).median_gap;
}

DriftReport RankFeatures(const FeatureTable& a, const FeatureTable& b, int k) {
  if (a.registry_version != b.registry_version) {
    throw Error(ErrorCode::kRegistryMismatch,
                "feature tables use registry versions '" + a.registry_version +
                    "' and '" + b.registry_version + "'");
  }
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  DriftReport report;
  for (const FeatureSlot& slot : FeatureRegistry()) {
    std::vector<double> ca = Column(a, slot.index);
    std::vector<double> cb = Column(b, slot.index);
    report.features.push_back(
        {slot.index, std::string(slot.name), CompareSamples(ca, cb)});
  }
  std::vector<int> order(report.features.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&report](int x, int y) {
    return report.features[x].gap.median_gap > report.features[y].gap.median_gap;
  });
  size_t take = std::min<size_t>(static_cast<size_t>(k), order.size());
  for (size_t i = 0; i < take; ++i) report.top_k.push_back(report.features[order[i]].index);
  return report;
}

std::string DriftToCsv(const DriftReport& report) {
  std::string out = "index,name,median_a,median_b,gap,kept_a,kept_b\n";
  for (int index : report.top_k) {
    const FeatureDrift& f = report.features.at(index - 1);
    out += std::to_string(f.index) + "," + f.name + "," + Shortest(f.gap.median_a) +
           "," + Shortest(f.gap.median_b) + "," + Shortest(f.gap.median_gap) + "," +
           std::to_string(f.gap.kept_a) + "," + std::to_string(f.gap.kept_b) + "\n";
  }
  return out;
}

CdfSeries InliningCdf(std::span<const double> ratios) {
  if (ratios.empty()) throw Error(ErrorCode::kEmptyInput, "no ratios");
  for (double r : ratios) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::kOutOfRange, "ratio " + Shortest(r) + " outside [0, 1]");
    }
  }
  std::vector<double> sorted(ratios.begin(), ratios.end());
  std::sort(sorted.begin(), sorted.end());
  CdfSeries cdf;
  const double n = static_cast<double>(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    cdf.points.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  cdf.min = sorted.front();
  cdf.max = sorted.back();
  cdf.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  return cdf;
}

std::string CdfToCsv(const CdfSeries& cdf) {
  std::string out = "ratio,fraction\n";
  for (auto [ratio, fraction] : cdf.points) {
    out += Shortest(ratio) + "," + Shortest(fraction) + "\n";
  }
  return out;
}

std::string CdfSummary(const CdfSeries& cdf) {
  return "max=" + Fixed(cdf.max, 4) + ",mean=" + Fixed(cdf.mean, 4);
}

std::string CdfToSvg(const std::vector<std::pair<std::string, CdfSeries>>& series) {
  constexpr int kWidth = 480, kHeight = 320, kMargin = 40;
  constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                     "#9467bd", "#ff7f0e", "#8c564b"};
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  auto x = [&](double ratio) { return Fixed(kMargin + ratio * plot_w, 2); };
  auto y = [&](double fraction) { return Fixed(kHeight - kMargin - fraction * plot_h, 2); };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
      "\" height=\"" + std::to_string(kHeight) + "\" font-family=\"sans-serif\" "
      "font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<path d=\"M" + x(0) + " " + y(1) + " V" + y(0) + " H" + x(1) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double tick : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    svg += "<text x=\"" + x(tick) + "\" y=\"" + Fixed(kHeight - kMargin + 14, 2) +
           "\" text-anchor=\"middle\">" + Fixed(tick, 2) + "</text>\n";
    svg += "<text x=\"" + Fixed(kMargin - 4, 2) + "\" y=\"" + y(tick) +
           "\" text-anchor=\"end\">" + Fixed(tick, 2) + "</text>\n";
  }
  svg += "<text x=\"" + x(0.5) + "\" y=\"" + Fixed(kHeight - 6, 2) +
         "\" text-anchor=\"middle\">inlining ratio</text>\n";
  for (size_t i = 0; i < series.size(); ++i) {
    const auto& [label, cdf] = series[i];
    const char* color = kColors[i % std::size(kColors)];
    std::string points = x(0) + "," + y(0);
    double level = 0;
    for (auto [ratio, fraction] : cdf.points) {
      points += " " + x(ratio) + "," + y(level);
      points += " " + x(ratio) + "," + y(fraction);
      level = fraction;
    }
    points += " " + x(1) + "," + y(level);
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    svg += "<text x=\"" + Fixed(kMargin + 8, 2) + "\" y=\"" +
           Fixed(kMargin + 14 * static_cast<double>(i + 1), 2) + "\" fill=\"" + color +
           "\">" + XmlEscape(label) + " (" + CdfSummary(cdf) + ")</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace inlinescope
