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

#ifndef TIMBRE_SUMMARY_H_
#define TIMBRE_SUMMARY_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "timbre/dataset.h"

namespace timbre {

// Length and loudness statistics for one dataset. Standard deviations are
// population deviations. Silent samples (loudness -inf) are left out of the
// loudness statistics and counted.
struct DatasetSummary {
  std::string name;
  std::size_t n = 0;
  std::optional<std::string> pitch;
  double length_mean = 0.0;
  double length_std = 0.0;
  double loudness_mean = 0.0;
  double loudness_std = 0.0;
  std::size_t silent = 0;
  // Set when some audio could not be read; statistics then cover the rest.
  std::vector<std::string> errors;
};

DatasetSummary summarize_dataset(const TimbreDataset& dataset, double block_seconds = 0.08);

// "0.27±0.03", or just the mean when the deviation rounds to zero.
std::string format_mean_std(double mean, double std, int decimals = 2);

}  // namespace timbre

#endif  // TIMBRE_SUMMARY_H_
