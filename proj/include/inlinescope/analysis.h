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
//
// Descriptive statistics over feature tables and inlining ratios: min-max
// normalization, the one-shot three-sigma filter, median gaps between two
// sample sets, feature drift ranking, and empirical CDFs.

#ifndef INLINESCOPE_ANALYSIS_H_
#define INLINESCOPE_ANALYSIS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inlinescope/features.h"

namespace inlinescope {

// Min-max scaling to [0, 1]; a constant input maps to zeros. Throws
// kEmptyInput, and kInvalidArgument on NaN.
std::vector<double> Normalize(std::span<const double> values);

struct SigmaFilter {
  std::vector<double> kept;
  std::vector<double> removed;
};

// Keeps v iff |v - mean| <= 3 * sigma, with the population standard deviation
// of the whole input (single pass). sigma == 0 keeps everything. Order is
// preserved. Throws kTooFewSamples below two values.
SigmaFilter ThreeSigmaFilter(std::span<const double> values);

// Throws kEmptyInput. Even lengths average the two middle values.
double Median(std::span<const double> values);
double Mean(std::span<const double> values);

struct GapResult {
  double median_a = 0;
  double median_b = 0;
  double median_gap = 0;
  double mean_gap = 0;
  size_t kept_a = 0;
  size_t kept_b = 0;
};

// Both sets are normalized on the scale of their union, filtered
// independently, then compared.
GapResult CompareSamples(std::span<const double> a, std::span<const double> b);
double MedianGap(std::span<const double> a, std::span<const double> b);

struct FeatureDrift {
  int index = 0;
  std::string name;
  GapResult gap;
};

struct DriftReport {
  std::vector<FeatureDrift> features;  // all 62, by index
  std::vector<int> top_k;              // by gap descending, then index
};

// Samples are the per-function rows of each table (the __binary__ row is
// excluded). Throws kRegistryMismatch when versions differ,
// kInvalidArgument when k < 1.
DriftReport RankFeatures(const FeatureTable& a, const FeatureTable& b, int k);

// "index,name,median_a,median_b,gap,kept_a,kept_b", rows in top_k order.
std::string DriftToCsv(const DriftReport& report);

struct CdfSeries {
  std::vector<std::pair<double, double>> points;  // (ratio, fraction <= ratio)
  double min = 0;
  double max = 0;
  double mean = 0;
};

// Throws kEmptyInput, and kOutOfRange for ratios outside [0, 1] or NaN.
CdfSeries InliningCdf(std::span<const double> ratios);

// "ratio,fraction" rows.
std::string CdfToCsv(const CdfSeries& cdf);
// "max=0.0952,mean=0.0083", four decimals.
std::string CdfSummary(const CdfSeries& cdf);
// A self-contained SVG with one step polyline per series and a legend.
std::string CdfToSvg(const std::vector<std::pair<std::string, CdfSeries>>& series);

}  // namespace inlinescope

#endif  // INLINESCOPE_ANALYSIS_H_
