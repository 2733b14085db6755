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

#include "timbre/align.h"

#include <algorithm>
#include <cmath>

#include "timbre/error.h"

namespace timbre {

std::vector<RowPair> row_pairs(const Block& pred, const Block& gt) {
  if (pred.size() != gt.size()) throw ShapeError("block sizes differ");
  std::vector<RowPair> rows;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    RowPair row;
    row.reference = i;
    for (std::size_t j = 0; j < gt.size(); ++j) {
      if (j == i || !gt.defined(i, j) || !pred.defined(i, j)) continue;
      row.columns.push_back(j);
      row.pred.push_back(pred.at(i, j));
      row.gt.push_back(gt.at(i, j));
    }
    if (!row.columns.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<double> mae(const Block& pred, const Block& gt) {
  if (pred.size() != gt.size()) throw ShapeError("block sizes differ");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    for (std::size_t j = i + 1; j < gt.size(); ++j) {
      if (!gt.defined(i, j) || !pred.defined(i, j)) continue;
      sum += std::abs(pred.at(i, j) - gt.at(i, j));
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::optional<double> MetricTally::mean() const {
  if (evaluated == 0) return std::nullopt;
  return sum / static_cast<double>(evaluated);
}

MetricTally& MetricTally::operator+=(const MetricTally& o) {
  sum += o.sum;
  evaluated += o.evaluated;
  skipped += o.skipped;
  triplets += o.triplets;
  tied_pairs += o.tied_pairs;
  degenerate += o.degenerate;
  return *this;
}

BlockScores score_block(const Block& pred, const Block& gt,
                        std::span<const Metric> metrics, const MetricOptions& options) {
  BlockScores scores{};
  auto wants = [&](Metric m) {
    return std::find(metrics.begin(), metrics.end(), m) != metrics.end();
  };

  if (wants(Metric::kMae)) {
    auto& t = scores[metric_index(Metric::kMae)];
    for (std::size_t i = 0; i < gt.size(); ++i) {
      for (std::size_t j = i + 1; j < gt.size(); ++j) {
        if (!gt.defined(i, j)) continue;
        if (!pred.defined(i, j)) {
          ++t.skipped;
          continue;
        }
        t.sum += std::abs(pred.at(i, j) - gt.at(i, j));
        ++t.evaluated;
      }
    }
  }

  const bool any_rank = wants(Metric::kKendall) || wants(Metric::kSpearman) ||
                        wants(Metric::kNdcg) || wants(Metric::kTriplet);
  if (!any_rank) return scores;

  // Rows of the ground truth with no usable entry at all count as skipped.
  std::size_t empty_rows = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    bool any = false;
    for (std::size_t j = 0; j < gt.size() && !any; ++j) {
      any = j != i && gt.defined(i, j) && pred.defined(i, j);
    }
    bool rated = false;
    for (std::size_t j = 0; j < gt.size() && !rated; ++j) rated = j != i && gt.defined(i, j);
    if (rated && !any) ++empty_rows;
  }

  for (const RowPair& row : row_pairs(pred, gt)) {
    if (wants(Metric::kKendall)) {
      auto& t = scores[metric_index(Metric::kKendall)];
      if (auto v = kendall_row(row.pred, row.gt)) {
        t.sum += *v;
        ++t.evaluated;
      } else {
        ++t.skipped;
      }
    }
    if (wants(Metric::kSpearman)) {
      auto& t = scores[metric_index(Metric::kSpearman)];
      if (auto v = spearman_row(row.pred, row.gt)) {
        t.sum += *v;
        ++t.evaluated;
      } else {
        ++t.skipped;
      }
    }
    if (wants(Metric::kNdcg)) {
      auto& t = scores[metric_index(Metric::kNdcg)];
      const NdcgResult r = ndcg_row(row.pred, row.gt, row.columns, options.gain);
      t.tied_pairs += r.tied_pairs;
      if (r.degenerate) {
        ++t.degenerate;
        ++t.skipped;
      } else {
        t.sum += r.value;
        ++t.evaluated;
      }
    }
    if (wants(Metric::kTriplet)) {
      auto& t = scores[metric_index(Metric::kTriplet)];
      const TripletResult r = triplet_agreement_row(row.pred, row.gt, options.triplet);
      t.triplets += r.triplets;
      if (r.agreement) {
        t.sum += *r.agreement;
        ++t.evaluated;
      } else {
        ++t.skipped;
      }
    }
  }

  for (Metric m : {Metric::kKendall, Metric::kSpearman, Metric::kNdcg, Metric::kTriplet}) {
    if (wants(m)) scores[metric_index(m)].skipped += empty_rows;
  }
  return scores;
}

}  // namespace timbre
