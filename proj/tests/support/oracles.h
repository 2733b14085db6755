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

#ifndef TIMBRE_TESTS_SUPPORT_ORACLES_H_
#define TIMBRE_TESTS_SUPPORT_ORACLES_H_

#include <cstddef>
#include <optional>
#include <vector>

// Brute-force reference implementations. Everything here is written as plain
// loops over pairs, ranks and triplets and shares no code with the engine.
namespace timbre::oracle {

// Dense symmetric matrix; NaN marks an undefined cell (and the diagonal).
using Matrix = std::vector<std::vector<double>>;

Matrix rescaled(const Matrix& m);

std::optional<double> kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y);
std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y);
// Returns nullopt when the ideal DCG is zero.
std::optional<double> ndcg(const std::vector<double>& pred, const std::vector<double>& gt,
                           const std::vector<std::size_t>& ids);
// Returns nullopt when no triplet exceeds the margin.
std::optional<double> triplet_agreement(const std::vector<double>& pred,
                                        const std::vector<double>& gt, double margin);

double l2(const std::vector<double>& u, const std::vector<double>& v);
double l1(const std::vector<double>& u, const std::vector<double>& v);
double cosine_distance(const std::vector<double>& u, const std::vector<double>& v);
double poincare(const std::vector<double>& u, const std::vector<double>& v);

// Sums and counts of one metric over a set of blocks, so that several
// datasets can be pooled into a global mean.
struct Pooled {
  double sum = 0.0;
  std::size_t count = 0;
  double mean() const { return sum / static_cast<double>(count); }
};

struct BlockOracle {
  Pooled mae, kendall, spearman, ndcg, triplet;
};

// Scores already-rescaled matrices: MAE over pairs i < j defined in both,
// rank metrics over rows i with columns j != i defined in both.
BlockOracle score(const Matrix& pred, const Matrix& gt, double margin);

void pool(BlockOracle& into, const BlockOracle& from);

}  // namespace timbre::oracle

#endif  // TIMBRE_TESTS_SUPPORT_ORACLES_H_
