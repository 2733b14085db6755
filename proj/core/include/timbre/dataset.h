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

#ifndef TIMBRE_DATASET_H_
#define TIMBRE_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace timbre {

// One averaged human dissimilarity rating for the unordered pair (i, j), i < j.
// Higher values mean the two sounds were judged more different.
struct Rating {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;

  bool operator==(const Rating&) const = default;
};

// Audio references plus sparse upper-triangular ratings for one study.
// Immutable once loaded.
struct TimbreDataset {
  std::string name;
  // Directory the manifest was loaded from; audio paths resolve against it.
  std::filesystem::path root;
  // Audio paths exactly as written in the manifest.
  std::vector<std::string> audio;
  std::vector<Rating> ratings;
  // Optional pitch label (e.g. "Eb4").
  std::optional<std::string> pitch;

  std::size_t size() const { return audio.size(); }
  std::filesystem::path audio_path(std::size_t index) const;
};

struct LoadOptions {
  bool require_audio = true;
};

// Parses and validates a dataset manifest:
//   {"name": str, "audio": [paths], "ratings": [[i, j, value], ...],
//    "pitch": str (optional)}
// Throws InputError naming the file and field on any violation.
TimbreDataset load_dataset(const std::filesystem::path& manifest,
                           const LoadOptions& options = {});
TimbreDataset parse_dataset(std::string_view json, const std::string& source,
                            const std::filesystem::path& root,
                            const LoadOptions& options = {});

// Manifest JSON for `dataset`; parse_dataset(serialize_dataset(d)) == d.
std::string serialize_dataset(const TimbreDataset& dataset);

// Throws InputError if any invariant is violated.
void validate_dataset(const TimbreDataset& dataset, const std::string& source);

// Loads every `*.json` directly inside `dir` and every `<subdir>/dataset.json`,
// ordered by path. A missing or empty directory yields an empty corpus.
std::vector<TimbreDataset> load_corpus(const std::filesystem::path& dir,
                                       const LoadOptions& options = {});

struct CorpusStats {
  std::size_t n_datasets = 0;
  std::size_t n_samples = 0;
  std::size_t n_ratings = 0;

  bool operator==(const CorpusStats&) const = default;
};

CorpusStats corpus_stats(std::span<const TimbreDataset> datasets);

// Square symmetric block with an undefined diagonal and optional missing pairs.
// Undefined cells hold NaN.
class Block {
 public:
  Block() = default;
  Block(std::string dataset_name, std::size_t n);

  const std::string& dataset_name() const { return dataset_name_; }
  std::size_t size() const { return n_; }

  bool defined(std::size_t i, std::size_t j) const;
  double at(std::size_t i, std::size_t j) const;
  // Sets both (i, j) and (j, i). Requires i != j.
  void set(std::size_t i, std::size_t j, double value);
  void clear(std::size_t i, std::size_t j);

  std::size_t defined_pairs() const;
  bool rescaled() const { return rescaled_; }

  // Min-max rescales all defined entries into [0, 1]. Returns false when the
  // block is degenerate (constant), in which case every entry becomes 0.
  bool rescale();

 private:
  std::string dataset_name_;
  std::size_t n_ = 0;
  std::vector<double> cells_;
  bool rescaled_ = false;
};

Block ground_truth_block(const TimbreDataset& dataset);

struct RescaleResult {
  std::vector<double> values;
  bool degenerate = false;
};

// v' = (v - min) / (max - min). A constant input maps to all zeros and is
// flagged degenerate. Throws std::invalid_argument on empty input.
RescaleResult rescale_block(std::span<const double> values);

}  // namespace timbre

#endif  // TIMBRE_DATASET_H_
