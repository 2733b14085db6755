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

#ifndef TIMBRE_TESTS_SUPPORT_FIXTURES_H_
#define TIMBRE_TESTS_SUPPORT_FIXTURES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "timbre/audio.h"
#include "timbre/dataset.h"
#include "timbre/embeddings.h"
#include "timbre/tensor.h"

namespace timbre::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Sum of harmonics of `f0` with 1/k amplitudes and an exponential decay.
Waveform harmonic_tone(double f0, double seconds, std::uint32_t rate = 44100,
                       int harmonics = 6, double amplitude = 0.3, double decay = 3.0);

Waveform sine(double freq, double seconds, std::uint32_t rate, double amplitude = 1.0);

// Deterministic pseudo-random noise in [-amplitude, amplitude].
Waveform noise(double seconds, std::uint32_t rate, std::uint64_t seed, double amplitude = 0.5);

// A small on-disk corpus of synthetic tones. Each dataset gets `sizes[d]`
// samples with varying pitch, brightness and length, a full upper triangle of
// ratings derived from those parameters plus jitter, and a manifest at
// <dir>/<name>.json.
std::vector<TimbreDataset> write_tone_corpus(const std::filesystem::path& dir,
                                             const std::vector<std::size_t>& sizes,
                                             std::uint64_t seed = 7);

// Random dissimilarity matrix with a fraction of pairs left undefined.
oracle::Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double missing = 0.0);

// Block with the defined cells of `m`.
Block to_block(const oracle::Matrix& m, const std::string& name = "fixture");

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double scale = 1.0);

// Builds an interchange directory: one NPY file per add() plus manifest.json.
class EmbeddingWriter {
 public:
  explicit EmbeddingWriter(std::filesystem::path dir);

  void add(const std::string& audio, const std::string& source_id, const Tensor& tensor,
           std::optional<std::size_t> time_axis,
           std::optional<std::string> layer_id = std::nullopt,
           TensorLayout layout = TensorLayout::kChannelsFirst);
  // Writes manifest.json and returns its path.
  std::filesystem::path finish() const;

  EmbeddingManifest manifest;
};

}  // namespace timbre::testing

#endif  // TIMBRE_TESTS_SUPPORT_FIXTURES_H_
