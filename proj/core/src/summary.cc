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

#include "timbre/summary.h"

#include <fmt/format.h>

#include <cmath>
#include <tuple>

#include "timbre/audio.h"
#include "timbre/error.h"

namespace timbre {

namespace {

std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {std::nan(""), std::nan("")};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

}  // namespace

DatasetSummary summarize_dataset(const TimbreDataset& dataset, double block_seconds) {
  DatasetSummary s;
  s.name = dataset.name;
  s.n = dataset.size();
  s.pitch = dataset.pitch;
  std::vector<double> lengths, loudness;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    try {
      const Waveform w = decode_wav(dataset.audio_path(i));
      lengths.push_back(w.duration());
      const double lufs = integrated_loudness(w, block_seconds);
      if (std::isfinite(lufs)) {
        loudness.push_back(lufs);
      } else {
        ++s.silent;
      }
    } catch (const Error& e) {
      s.errors.push_back(e.what());
    }
  }
  std::tie(s.length_mean, s.length_std) = mean_std(lengths);
  std::tie(s.loudness_mean, s.loudness_std) = mean_std(loudness);
  return s;
}

std::string format_mean_std(double mean, double std, int decimals) {
  if (std::isnan(mean)) return "n/a";
  const double unit = std::pow(10.0, -decimals) / 2.0;
  if (!(std >= unit)) return fmt::format("{:.{}f}", mean, decimals);
  return fmt::format("{:.{}f}±{:.{}f}", mean, decimals, std, decimals);
}

}  // namespace timbre
