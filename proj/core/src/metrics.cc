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

#include "timbre/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "timbre/error.h"

namespace timbre {

namespace {

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

void check_row(std::span<const double> pred, std::span<const double> gt) {
  if (pred.size() != gt.size()) throw ShapeError("row lengths differ");
}

// Sum of t(t-1)/2 over runs of equal values in a sorted sequence.
template <typename Eq>
std::uint64_t tied_pairs_sorted(std::size_t n, Eq equal) {
  std::uint64_t ties = 0;
  std::size_t run = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k < n && equal(k - 1, k)) {
      ++run;
    } else {
      ties += static_cast<std::uint64_t>(run) * (run - 1) / 2;
      run = 1;
    }
  }
  return ties;
}

// Number of pairs k < l with v[k] > v[l]; sorts v.
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch,
                               std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = count_inversions(v, scratch, lo, mid) +
                      count_inversions(v, scratch, mid, hi);
  std::size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (v[b] < v[a]) {
      inv += mid - a;
      scratch[out++] = v[b++];
    } else {
      scratch[out++] = v[a++];
    }
  }
  while (a < mid) scratch[out++] = v[a++];
  while (b < hi) scratch[out++] = v[b++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace

// O(n log n) tau-b (Knight's algorithm): sort by (x, y), count inversions of
// y by merge sort, correct for ties in x, y and both.
std::optional<double> kendall_row(std::span<const double> pred,
                                  std::span<const double> gt) {
  check_row(pred, gt);
  const std::size_t n = pred.size();
  if (n < 2 || constant(pred) || constant(gt)) return std::nullopt;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (gt[a] != gt[b]) return gt[a] < gt[b];
    return pred[a] < pred[b];
  });

  const std::uint64_t x_ties =
      tied_pairs_sorted(n, [&](std::size_t a, std::size_t b) { return gt[order[a]] == gt[order[b]]; });
  const std::uint64_t joint_ties = tied_pairs_sorted(n, [&](std::size_t a, std::size_t b) {
    return gt[order[a]] == gt[order[b]] && pred[order[a]] == pred[order[b]];
  });

  std::vector<double> y(n), scratch(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = pred[order[k]];
  const std::uint64_t discordant = count_inversions(y, scratch, 0, n);
  // y is now sorted.
  const std::uint64_t y_ties =
      tied_pairs_sorted(n, [&](std::size_t a, std::size_t b) { return y[a] == y[b]; });

  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const double numerator = static_cast<double>(total) - static_cast<double>(x_ties) -
                           static_cast<double>(y_ties) + static_cast<double>(joint_ties) -
                           2.0 * static_cast<double>(discordant);
  const double denom = std::sqrt(static_cast<double>(total - x_ties) *
                                 static_cast<double>(total - y_ties));
  return std::clamp(numerator / denom, -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t k = 0;
  while (k < n) {
    std::size_t end = k + 1;
    while (end < n && values[order[end]] == values[order[k]]) ++end;
    const double rank = 0.5 * static_cast<double>(k + 1 + end);  // mean of k+1..end
    for (std::size_t m = k; m < end; ++m) ranks[order[m]] = rank;
    k = end;
  }
  return ranks;
}

std::optional<double> spearman_row(std::span<const double> pred,
                                   std::span<const double> gt) {
  check_row(pred, gt);
  const std::size_t n = pred.size();
  if (n < 2 || constant(pred) || constant(gt)) return std::nullopt;
  const auto rp = average_ranks(pred);
  const auto rg = average_ranks(gt);
  const double mean = 0.5 * static_cast<double>(n + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = rp[k] - mean;
    const double dy = rg[k] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

NdcgResult ndcg_row(std::span<const double> pred, std::span<const double> gt,
                    std::span<const std::size_t> ids, NdcgGain gain) {
  check_row(pred, gt);
  if (!ids.empty() && ids.size() != pred.size()) throw ShapeError("ids length differs");
  const std::size_t n = pred.size();
  NdcgResult result;
  if (n == 0) {
    result.degenerate = true;
    return result;
  }
  auto id = [&](std::size_t k) { return ids.empty() ? k : ids[k]; };
  auto gain_of = [&](double rel) {
    return gain == NdcgGain::kLinear ? rel : std::exp2(rel) - 1.0;
  };

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pred[a] != pred[b]) return pred[a] < pred[b];
    return id(a) < id(b);
  });
  for (std::size_t k = 1; k < n; ++k) {
    // Count tied predicted pairs along the sorted order.
    std::size_t m = k;
    while (m > 0 && pred[order[m - 1]] == pred[order[k]]) {
      ++result.tied_pairs;
      --m;
    }
  }

  std::vector<double> rel(n);
  for (std::size_t k = 0; k < n; ++k) rel[k] = 1.0 - gt[k];
  std::vector<double> ideal = rel;
  std::sort(ideal.begin(), ideal.end(), std::greater<>());

  double dcg = 0.0, idcg = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double discount = std::log2(static_cast<double>(r) + 2.0);
    dcg += gain_of(rel[order[r]]) / discount;
    idcg += gain_of(ideal[r]) / discount;
  }
  if (!(idcg > 0.0)) {
    result.value = 1.0;
    result.degenerate = true;
    return result;
  }
  result.value = dcg / idcg;
  return result;
}

std::vector<std::pair<std::size_t, std::size_t>> extract_triplets(
    std::span<const double> gt, const TripletConfig& cfg) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < gt.size(); ++j) {
    for (std::size_t k = j + 1; k < gt.size(); ++k) {
      if (std::abs(gt[j] - gt[k]) > cfg.margin) out.emplace_back(j, k);
    }
  }
  return out;
}

TripletResult triplet_agreement_row(std::span<const double> pred,
                                    std::span<const double> gt,
                                    const TripletConfig& cfg) {
  check_row(pred, gt);
  const auto triplets = extract_triplets(gt, cfg);
  TripletResult result;
  result.triplets = triplets.size();
  if (triplets.empty()) return result;
  std::size_t agree = 0;
  for (const auto& [j, k] : triplets) {
    const double dp = pred[j] - pred[k];
    const double dg = gt[j] - gt[k];
    if (dp != 0.0 && (dp > 0.0) == (dg > 0.0)) ++agree;
  }
  result.agreement = static_cast<double>(agree) / static_cast<double>(triplets.size());
  return result;
}

const char* metric_name(Metric metric) {
  switch (metric) {
    case Metric::kMae: return "mae";
    case Metric::kKendall: return "kendall";
    case Metric::kSpearman: return "spearman";
    case Metric::kNdcg: return "ndcg";
    case Metric::kTriplet: return "triplet";
  }
  return "?";
}

Metric parse_metric(const std::string& name) {
  if (name == "mae") return Metric::kMae;
  if (name == "kendall") return Metric::kKendall;
  if (name == "spearman") return Metric::kSpearman;
  if (name == "ndcg") return Metric::kNdcg;
  if (name == "triplet") return Metric::kTriplet;
  throw InputError("--metrics", name, "unknown metric");
}

}  // namespace timbre
