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

#ifndef TIMBRE_ALIGN_H_
#define TIMBRE_ALIGN_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "timbre/dataset.h"
#include "timbre/metrics.h"

namespace timbre {

// One reference row: all columns j != reference defined in both blocks, in
// ascending j.
struct RowPair {
  std::size_t reference = 0;
  std::vector<std::size_t> columns;
  std::vector<double> pred;
  std::vector<double> gt;
};

// Rows with at least one mutually defined entry, in reference order.
std::vector<RowPair> row_pairs(const Block& pred, const Block& gt);

// Mean |pred - gt| over mutually defined pairs i < j; std::nullopt if none.
std::optional<double> mae(const Block& pred, const Block& gt);

struct MetricOptions {
  TripletConfig triplet;
  NdcgGain gain = NdcgGain::kLinear;
};

// Per-metric sums over one block, kept unnormalised so that corpus
// aggregates are global row (or pair) means.
struct MetricTally {
  double sum = 0.0;
  std::size_t evaluated = 0;  // rows, or pairs for MAE
  std::size_t skipped = 0;
  std::size_t triplets = 0;
  std::size_t tied_pairs = 0;
  std::size_t degenerate = 0;

  std::optional<double> mean() const;
  MetricTally& operator+=(const MetricTally& other);
};

inline constexpr std::size_t kMetricCount = 5;
using BlockScores = std::array<MetricTally, kMetricCount>;

inline std::size_t metric_index(Metric m) { return static_cast<std::size_t>(m); }

// Scores rescaled blocks. Only the requested metrics are filled. Undefined
// rows (Kendall/Spearman on short or constant rows, NDCG with zero ideal
// gain, triplet rows without triplets) are counted as skipped.
BlockScores score_block(const Block& pred, const Block& gt,
                        std::span<const Metric> metrics, const MetricOptions& options);

}  // namespace timbre

#endif  // TIMBRE_ALIGN_H_
