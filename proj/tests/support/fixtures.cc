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

#include "fixtures.h"

#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include <unistd.h>

#include "timbre/npy.h"

namespace timbre::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("timbre_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

Waveform harmonic_tone(double f0, double seconds, std::uint32_t rate, int harmonics,
                       double amplitude, double decay) {
  Waveform w;
  w.sample_rate = rate;
  const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    double s = 0.0;
    for (int k = 1; k <= harmonics; ++k) {
      s += std::sin(2.0 * std::numbers::pi * f0 * k * t + 0.1 * k) / k;
    }
    w.samples[i] = amplitude * s * std::exp(-decay * t);
  }
  return w;
}

Waveform sine(double freq, double seconds, std::uint32_t rate, double amplitude) {
  Waveform w;
  w.sample_rate = rate;
  const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq * i / rate);
  }
  return w;
}

Waveform noise(double seconds, std::uint32_t rate, std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  Waveform w;
  w.sample_rate = rate;
  w.samples.resize(static_cast<std::size_t>(std::llround(seconds * rate)));
  for (double& s : w.samples) s = dist(rng);
  return w;
}

std::vector<TimbreDataset> write_tone_corpus(const fs::path& dir,
                                             const std::vector<std::size_t>& sizes,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::vector<TimbreDataset> out;
  fs::create_directories(dir);
  for (std::size_t d = 0; d < sizes.size(); ++d) {
    TimbreDataset ds;
    ds.name = "set" + std::to_string(d);
    ds.root = dir;
    std::vector<double> brightness(sizes[d]);
    for (std::size_t i = 0; i < sizes[d]; ++i) {
      const int harmonics = 1 + static_cast<int>(i % 7);
      const double seconds = 0.2 + 0.05 * static_cast<double>((i * 3 + d) % 5);
      brightness[i] = harmonics;
      const std::string file = ds.name + "_" + std::to_string(i) + ".wav";
      write_wav(dir / file,
                harmonic_tone(220.0 * (1.0 + 0.01 * static_cast<double>(d)), seconds, 44100,
                              harmonics, 0.3, 2.0 + static_cast<double>(i % 3)));
      ds.audio.push_back(file);
    }
    for (std::size_t i = 0; i < sizes[d]; ++i) {
      for (std::size_t j = i + 1; j < sizes[d]; ++j) {
        ds.ratings.push_back({i, j, std::fabs(brightness[i] - brightness[j]) + 1.0 + jitter(rng)});
      }
    }
    std::ofstream(dir / (ds.name + ".json")) << serialize_dataset(ds);
    out.push_back(std::move(ds));
  }
  return out;
}

oracle::Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double missing) {
  std::uniform_real_distribution<double> value(0.0, 10.0);
  std::bernoulli_distribution drop(missing);
  oracle::Matrix m(n, std::vector<double>(n, std::nan("")));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (drop(rng)) continue;
      // Coarse grid so ties occur regularly.
      const double v = std::round(value(rng) * 2.0) / 2.0;
      m[i][j] = m[j][i] = v;
    }
  }
  return m;
}

Block to_block(const oracle::Matrix& m, const std::string& name) {
  Block b(name, m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!std::isnan(m[i][j])) b.set(i, j, m[i][j]);
    }
  }
  return b;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

EmbeddingWriter::EmbeddingWriter(fs::path dir) {
  manifest.root = std::move(dir);
  fs::create_directories(manifest.root);
}

void EmbeddingWriter::add(const std::string& audio, const std::string& source_id,
                          const Tensor& tensor, std::optional<std::size_t> time_axis,
                          std::optional<std::string> layer_id, TensorLayout layout) {
  EmbeddingEntry e;
  e.audio = audio;
  e.tensor = "t" + std::to_string(manifest.entries.size()) + ".npy";
  e.time_axis = time_axis;
  e.source_id = source_id;
  e.layer_id = std::move(layer_id);
  e.layout = layout;
  e.shape = tensor.shape;
  write_npy(manifest.root / e.tensor, tensor);
  manifest.entries.push_back(std::move(e));
}

fs::path EmbeddingWriter::finish() const {
  const fs::path path = manifest.root / "manifest.json";
  std::ofstream(path) << serialize_embedding_manifest(manifest);
  return path;
}

}  // namespace timbre::testing
