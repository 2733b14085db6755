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

#include "timbre/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "timbre/error.h"

namespace timbre {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path TimbreDataset::audio_path(std::size_t index) const {
  return root / fs::path(audio.at(index));
}

namespace {

std::size_t parse_index(const json& v, const std::string& source,
                        const std::string& field) {
  if (!v.is_number_integer()) {
    throw InputError(source, field, "index must be an integer");
  }
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  const auto s = v.get<std::int64_t>();
  if (s < 0) throw InputError(source, field, "index out of range");
  return static_cast<std::size_t>(s);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void validate_dataset(const TimbreDataset& d, const std::string& source) {
  const std::size_t n = d.size();
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t r = 0; r < d.ratings.size(); ++r) {
    const auto& rating = d.ratings[r];
    const std::string field = "ratings[" + std::to_string(r) + "]";
    if (rating.i == rating.j) throw InputError(source, field, "self-pair");
    if (rating.i >= n || rating.j >= n) {
      throw InputError(source, field, "index out of range for " +
                                          std::to_string(n) + " audio files");
    }
    if (rating.i > rating.j) {
      throw InputError(source, field, "pair must be ordered with i < j");
    }
    if (!std::isfinite(rating.value)) {
      throw InputError(source, field, "rating is not finite");
    }
    if (rating.value < 0.0) throw InputError(source, field, "negative rating");
    if (!seen.emplace(rating.i, rating.j).second) {
      throw InputError(source, field, "duplicate pair");
    }
  }
}

TimbreDataset parse_dataset(std::string_view text, const std::string& source,
                            const fs::path& root, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source, "", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError(source, "", "manifest must be an object");

  TimbreDataset d;
  d.root = root;

  if (!doc.contains("name") || !doc["name"].is_string()) {
    throw InputError(source, "name", "missing or not a string");
  }
  d.name = doc["name"].get<std::string>();

  if (!doc.contains("audio") || !doc["audio"].is_array()) {
    throw InputError(source, "audio", "missing or not an array");
  }
  for (std::size_t k = 0; k < doc["audio"].size(); ++k) {
    const auto& a = doc["audio"][k];
    if (!a.is_string()) {
      throw InputError(source, "audio[" + std::to_string(k) + "]",
                       "not a string");
    }
    d.audio.push_back(a.get<std::string>());
  }

  if (!doc.contains("ratings") || !doc["ratings"].is_array()) {
    throw InputError(source, "ratings", "missing or not an array");
  }
  for (std::size_t r = 0; r < doc["ratings"].size(); ++r) {
    const auto& item = doc["ratings"][r];
    const std::string field = "ratings[" + std::to_string(r) + "]";
    if (!item.is_array() || item.size() != 3) {
      throw InputError(source, field, "expected [i, j, value]");
    }
    if (!item[2].is_number()) throw InputError(source, field, "value not a number");
    d.ratings.push_back({parse_index(item[0], source, field),
                         parse_index(item[1], source, field),
                         item[2].get<double>()});
  }

  if (doc.contains("pitch")) {
    if (!doc["pitch"].is_string()) throw InputError(source, "pitch", "not a string");
    d.pitch = doc["pitch"].get<std::string>();
  }

  validate_dataset(d, source);

  if (options.require_audio) {
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (!fs::is_regular_file(d.audio_path(k))) {
        throw InputError(source, "audio[" + std::to_string(k) + "]",
                         "file not found: " + d.audio_path(k).string());
      }
    }
  }
  return d;
}

TimbreDataset load_dataset(const fs::path& manifest, const LoadOptions& options) {
  const std::string text = read_file(manifest);
  return parse_dataset(text, manifest.string(), manifest.parent_path(), options);
}

std::string serialize_dataset(const TimbreDataset& d) {
  nlohmann::ordered_json doc;
  doc["name"] = d.name;
  doc["audio"] = d.audio;
  auto ratings = nlohmann::ordered_json::array();
  for (const auto& r : d.ratings) {
    ratings.push_back(nlohmann::ordered_json::array({r.i, r.j, r.value}));
  }
  doc["ratings"] = std::move(ratings);
  if (d.pitch) doc["pitch"] = *d.pitch;
  return doc.dump(2) + "\n";
}

std::vector<TimbreDataset> load_corpus(const fs::path& dir,
                                       const LoadOptions& options) {
  std::vector<fs::path> manifests;
  if (!fs::is_directory(dir)) return {};
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      manifests.push_back(entry.path());
    } else if (entry.is_directory()) {
      const fs::path nested = entry.path() / "dataset.json";
      if (fs::is_regular_file(nested)) manifests.push_back(nested);
    }
  }
  std::sort(manifests.begin(), manifests.end());

  std::vector<TimbreDataset> out;
  out.reserve(manifests.size());
  for (const auto& m : manifests) out.push_back(load_dataset(m, options));
  return out;
}

CorpusStats corpus_stats(std::span<const TimbreDataset> datasets) {
  CorpusStats s;
  s.n_datasets = datasets.size();
  for (const auto& d : datasets) {
    s.n_samples += d.size();
    s.n_ratings += d.ratings.size();
  }
  return s;
}

Block::Block(std::string dataset_name, std::size_t n)
    : dataset_name_(std::move(dataset_name)),
      n_(n),
      cells_(n * n, std::numeric_limits<double>::quiet_NaN()) {}

bool Block::defined(std::size_t i, std::size_t j) const {
  return i != j && !std::isnan(cells_[i * n_ + j]);
}

double Block::at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }

void Block::set(std::size_t i, std::size_t j, double value) {
  if (i == j) throw std::invalid_argument("block diagonal is undefined");
  cells_[i * n_ + j] = value;
  cells_[j * n_ + i] = value;
}

void Block::clear(std::size_t i, std::size_t j) {
  cells_[i * n_ + j] = std::numeric_limits<double>::quiet_NaN();
  cells_[j * n_ + i] = std::numeric_limits<double>::quiet_NaN();
}

std::size_t Block::defined_pairs() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) count += defined(i, j) ? 1 : 0;
  }
  return count;
}

bool Block::rescale() {
  std::vector<double> values;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (defined(i, j)) values.push_back(at(i, j));
    }
  }
  if (values.empty()) throw std::invalid_argument("block has no defined pairs");
  const RescaleResult r = rescale_block(values);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (defined(i, j)) set(i, j, r.values[k++]);
    }
  }
  rescaled_ = true;
  return !r.degenerate;
}

Block ground_truth_block(const TimbreDataset& dataset) {
  Block b(dataset.name, dataset.size());
  for (const auto& r : dataset.ratings) b.set(r.i, r.j, r.value);
  return b;
}

RescaleResult rescale_block(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("rescale of empty block");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double range = *hi - *lo;
  RescaleResult out;
  out.values.resize(values.size(), 0.0);
  if (!(range > 0.0)) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    out.values[k] = (values[k] - min) / range;
  }
  return out;
}

}  // namespace timbre
