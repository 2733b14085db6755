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

#ifndef TIMBRE_METRICS_H_
#define TIMBRE_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace timbre {

// Row-wise rank metrics. `pred` and `gt` are aligned rows of rescaled
// dissimilarities for one reference sample (diagonal and missing pairs
// already removed).

// Kendall tau-b. std::nullopt when the row has fewer than two entries or
// either side is constant.
std::optional<double> kendall_row(std::span<const double> pred,
                                  std::span<const double> gt);

// Pearson correlation of average ranks. Undefined under the same conditions
// as kendall_row.
std::optional<double> spearman_row(std::span<const double> pred,
                                   std::span<const double> gt);

// Average (fractional) ranks, 1-based; ties share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

enum class NdcgGain {
  kLinear,       // gain = relevance
  kExponential,  // gain = 2^relevance - 1
};

struct NdcgResult {
  double value = 1.0;
  // IDCG was zero (no relevant item); value is 1 by convention and the row
  // is excluded from aggregates.
  bool degenerate = false;
  // Pairs of items with identical predicted dissimilarity.
  std::size_t tied_pairs = 0;
};

// Relevance is 1 - gt. Items are ranked by ascending predicted dissimilarity;
// ties break by ascending `ids` (sample index), or by row position when `ids`
// is empty. Discount log2(rank + 1), rank 1-based.
NdcgResult ndcg_row(std::span<const double> pred, std::span<const double> gt,
                    std::span<const std::size_t> ids = {},
                    NdcgGain gain = NdcgGain::kLinear);

struct TripletConfig {
  double margin = 0.1;
};

// Row positions (j, k), j < k, with |gt[j] - gt[k]| > margin.
std::vector<std::pair<std::size_t, std::size_t>> extract_triplets(
    std::span<const double> gt, const TripletConfig& cfg);

struct TripletResult {
  // Fraction of extracted triplets ordered the same way by pred and gt;
  // predicted ties disagree. std::nullopt when no triplet was extracted.
  std::optional<double> agreement;
  std::size_t triplets = 0;
};

TripletResult triplet_agreement_row(std::span<const double> pred,
                                    std::span<const double> gt,
                                    const TripletConfig& cfg);

enum class Metric { kMae, kKendall, kSpearman, kNdcg, kTriplet };

const char* metric_name(Metric metric);
// Parses mae, kendall, spearman, ndcg, triplet. Throws InputError otherwise.
Metric parse_metric(const std::string& name);

}  // namespace timbre

#endif  // TIMBRE_METRICS_H_
