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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "timbre/align.h"
#include "timbre/dataset.h"
#include "timbre/distances.h"
#include "timbre/metrics.h"

namespace timbre {
namespace {

Block random_block(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Block b("bench", n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) b.set(i, j, u(rng));
  }
  b.rescale();
  return b;
}

void BM_ScoreBlock(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Block pred = random_block(rng, n), gt = random_block(rng, n);
  const std::vector<Metric> all = {Metric::kMae, Metric::kKendall, Metric::kSpearman,
                                   Metric::kNdcg, Metric::kTriplet};
  for (auto _ : state) benchmark::DoNotOptimize(score_block(pred, gt, all, {}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ScoreBlock)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_KendallRow(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(state.range(0))), y(x.size());
  for (auto& v : x) v = u(rng);
  for (auto& v : y) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(kendall_row(x, y));
}
BENCHMARK(BM_KendallRow)->Arg(16)->Arg(64);

void BM_Distance(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  std::vector<double> a(static_cast<std::size_t>(state.range(1))), b(a.size());
  for (auto& v : a) v = u(rng);
  for (auto& v : b) v = u(rng);
  const auto kind = static_cast<DistanceKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(distance(kind, a, b));
  state.SetLabel(distance_name(kind));
}
BENCHMARK(BM_Distance)
    ->ArgsProduct({{static_cast<long>(DistanceKind::kL2), static_cast<long>(DistanceKind::kCosine),
                    static_cast<long>(DistanceKind::kPoincare)},
                   {512, 65536}});

}  // namespace
}  // namespace timbre
