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

#include <cmath>
#include <random>
#include <vector>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace timbre {
namespace {

using testing::random_matrix;
using testing::to_block;

const std::vector<Metric> kAll = {Metric::kMae, Metric::kKendall, Metric::kSpearman,
                                  Metric::kNdcg, Metric::kTriplet};

Block block3(double a, double b, double c) {
  Block blk("b", 3);
  blk.set(0, 1, a);
  blk.set(0, 2, b);
  blk.set(1, 2, c);
  return blk;
}

TEST(Mae, IdenticalBlocksScoreZero) {
  const Block gt = block3(0.0, 0.5, 1.0);
  EXPECT_DOUBLE_EQ(*mae(gt, gt), 0.0);
}

TEST(Mae, DirectArithmetic) {
  const Block gt = block3(0.0, 0.5, 1.0);
  EXPECT_NEAR(*mae(block3(0.0, 0.25, 1.0), gt), 0.25 / 3.0, 1e-15);
  EXPECT_NEAR(*mae(block3(1.0, 0.5, 0.0), gt), 2.0 / 3.0, 1e-15);
}

TEST(Mae, OnlyMutuallyDefinedPairs) {
  Block pred("p", 3);
  pred.set(0, 1, 0.5);
  EXPECT_DOUBLE_EQ(*mae(pred, block3(0.0, 0.5, 1.0)), 0.5);
  EXPECT_FALSE(mae(Block("e", 3), block3(0.0, 0.5, 1.0)).has_value());
}

TEST(RowPairs, SkipsDiagonalAndMissingCells) {
  Block gt = block3(0.1, 0.2, 0.3);
  Block pred("p", 3);
  pred.set(0, 2, 0.9);
  const auto rows = row_pairs(pred, gt);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].reference, 0u);
  EXPECT_EQ(rows[0].columns, std::vector<std::size_t>{2});
  EXPECT_EQ(rows[1].reference, 2u);
  EXPECT_EQ(rows[1].gt, std::vector<double>{0.2});
}

TEST(ScoreBlock, PerfectAlignment) {
  std::mt19937_64 rng(21);
  Block gt = to_block(random_matrix(rng, 9));
  gt.rescale();
  const auto s = score_block(gt, gt, kAll, {});
  EXPECT_DOUBLE_EQ(*s[metric_index(Metric::kMae)].mean(), 0.0);
  for (Metric m : {Metric::kKendall, Metric::kSpearman, Metric::kNdcg, Metric::kTriplet}) {
    EXPECT_DOUBLE_EQ(*s[metric_index(m)].mean(), 1.0) << metric_name(m);
  }
}

TEST(ScoreBlock, ReversedPrediction) {
  std::mt19937_64 rng(22);
  Block gt = to_block(random_matrix(rng, 9));
  gt.rescale();
  Block pred("p", 9);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = i + 1; j < 9; ++j) pred.set(i, j, 1.0 - gt.at(i, j));
  }
  const auto s = score_block(pred, gt, kAll, {});
  EXPECT_DOUBLE_EQ(*s[metric_index(Metric::kKendall)].mean(), -1.0);
  EXPECT_DOUBLE_EQ(*s[metric_index(Metric::kSpearman)].mean(), -1.0);
  EXPECT_DOUBLE_EQ(*s[metric_index(Metric::kTriplet)].mean(), 0.0);
}

TEST(ScoreBlock, OnlyRequestedMetricsAreFilled) {
  std::mt19937_64 rng(23);
  Block gt = to_block(random_matrix(rng, 5));
  gt.rescale();
  const std::vector<Metric> only = {Metric::kKendall};
  const auto s = score_block(gt, gt, only, {});
  EXPECT_EQ(s[metric_index(Metric::kMae)].evaluated, 0u);
  EXPECT_EQ(s[metric_index(Metric::kKendall)].evaluated, 5u);
}

TEST(ScoreBlock, ConstantGroundTruthRowsAreSkipped) {
  Block gt = block3(0.5, 0.5, 0.5);
  gt.rescale();
  const auto s = score_block(block3(0.1, 0.2, 0.3), gt, kAll, {});
  EXPECT_EQ(s[metric_index(Metric::kKendall)].evaluated, 0u);
  EXPECT_EQ(s[metric_index(Metric::kKendall)].skipped, 3u);
  EXPECT_FALSE(s[metric_index(Metric::kKendall)].mean().has_value());
  EXPECT_EQ(s[metric_index(Metric::kTriplet)].skipped, 3u);
  EXPECT_EQ(s[metric_index(Metric::kNdcg)].degenerate, 0u);
}

TEST(ScoreBlock, MatchesBruteForceOracle) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 10;
    const auto gt_m = oracle::rescaled(random_matrix(rng, n, 0.2));
    const auto pred_m = oracle::rescaled(random_matrix(rng, n));
    const auto s = score_block(to_block(pred_m), to_block(gt_m), kAll, {});
    const auto o = oracle::score(pred_m, gt_m, 0.1);
    const auto check = [&](Metric m, const oracle::Pooled& p) {
      const auto& t = s[metric_index(m)];
      ASSERT_EQ(t.evaluated, p.count) << metric_name(m);
      EXPECT_NEAR(t.sum, p.sum, 1e-9) << metric_name(m);
    };
    check(Metric::kMae, o.mae);
    check(Metric::kKendall, o.kendall);
    check(Metric::kSpearman, o.spearman);
    check(Metric::kNdcg, o.ndcg);
    check(Metric::kTriplet, o.triplet);
  }
}

TEST(ScoreBlock, MonotoneTransformLeavesRankMetricsUnchanged) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + trial % 8;
    Block gt = to_block(random_matrix(rng, n));
    gt.rescale();
    const auto raw = random_matrix(rng, n);
    auto warped = raw;
    for (auto& row : warped) {
      for (double& v : row) v = v * v * v + v;
    }
    Block a = to_block(raw), b = to_block(warped);
    a.rescale();
    b.rescale();
    const auto sa = score_block(a, gt, kAll, {});
    const auto sb = score_block(b, gt, kAll, {});
    for (Metric m : {Metric::kKendall, Metric::kSpearman, Metric::kNdcg, Metric::kTriplet}) {
      EXPECT_NEAR(*sa[metric_index(m)].mean(), *sb[metric_index(m)].mean(), 1e-12);
    }
  }
}

TEST(MetricTally, PoolsAsGlobalMean) {
  MetricTally a{.sum = 1.0, .evaluated = 1};
  MetricTally b{.sum = 1.0, .evaluated = 3, .skipped = 2};
  a += b;
  EXPECT_DOUBLE_EQ(*a.mean(), 0.5);
  EXPECT_EQ(a.skipped, 2u);
}

}  // namespace
}  // namespace timbre
