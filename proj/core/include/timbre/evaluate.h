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

#ifndef TIMBRE_EVALUATE_H_
#define TIMBRE_EVALUATE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "timbre/align.h"
#include "timbre/audio.h"
#include "timbre/dataset.h"
#include "timbre/distances.h"
#include "timbre/embeddings.h"
#include "timbre/features.h"
#include "timbre/lengths.h"
#include "timbre/metrics.h"
#include "timbre/style.h"
#include "timbre/tensor.h"

namespace timbre {

// Datasets plus lazily decoded audio. Thread-safe; datasets are immutable.
class Corpus {
 public:
  explicit Corpus(std::vector<TimbreDataset> datasets);
  // In-memory audio, one waveform per sample of each dataset.
  Corpus(std::vector<TimbreDataset> datasets,
         std::vector<std::vector<Waveform>> waveforms);

  const std::vector<TimbreDataset>& datasets() const { return datasets_; }

  // Decoded (and, if rate != 0 and differs, resampled) audio of one sample.
  std::shared_ptr<const Waveform> waveform(std::size_t dataset, std::size_t index,
                                           std::uint32_t rate = 0) const;

 private:
  std::vector<TimbreDataset> datasets_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<std::size_t, std::size_t, std::uint32_t>,
                   std::shared_ptr<const Waveform>>
      audio_;
};

// Produces one representation per corpus sample.
class RepresentationSource {
 public:
  virtual ~RepresentationSource() = default;

  virtual std::string name() const = 0;
  virtual RepresentationTraits traits() const = 0;

  // Sources computed from audio are fed padded or windowed waveforms; the
  // others are looked up per sample.
  virtual bool uses_audio() const = 0;
  // Analysis rate for audio sources (0 keeps the native rate).
  virtual std::uint32_t sample_rate() const { return 0; }
  virtual Representation compute(const Waveform& w) const;
  virtual Representation lookup(const Corpus& corpus, std::size_t dataset,
                                std::size_t index) const;

  // Identifies the configuration in cache keys.
  virtual std::string cache_key() const { return name(); }
};

using FeatureFunction = std::function<Representation(const Waveform&)>;

// Wraps any waveform -> representation function (built-in DSP features or an
// in-process model used as a training-time hook).
class FunctionSource : public RepresentationSource {
 public:
  FunctionSource(std::string name, FeatureFunction fn, RepresentationTraits traits,
                 std::uint32_t sample_rate, std::string cache_key = {});

  std::string name() const override { return name_; }
  RepresentationTraits traits() const override { return traits_; }
  bool uses_audio() const override { return true; }
  std::uint32_t sample_rate() const override { return rate_; }
  Representation compute(const Waveform& w) const override { return fn_(w); }
  std::string cache_key() const override { return key_; }

 private:
  std::string name_;
  FeatureFunction fn_;
  RepresentationTraits traits_;
  std::uint32_t rate_;
  std::string key_;
};

// Built-in "mfcc" and "mss". `fixed_window` marks the feature as
// shift-sensitive with that window (in seconds).
std::unique_ptr<RepresentationSource> make_feature_source(
    const std::string& name, std::optional<double> fixed_window = std::nullopt);

// Maps manifest entries onto corpus samples. The entry's "audio" field may be
// "<dataset name>/<manifest audio path>", the dataset's own audio path, or a
// path that resolves (relative to the embedding manifest) to the same file.
class EntryIndex {
 public:
  EntryIndex(const EmbeddingManifest& manifest, std::vector<std::size_t> entries);
  // Entry positions (in manifest order) for one sample; throws InputError if
  // the sample has none.
  const std::vector<std::size_t>& find(const Corpus& corpus, std::size_t dataset,
                                       std::size_t index) const;

 private:
  std::filesystem::path root_;
  std::map<std::string, std::vector<std::size_t>> by_key_;
  std::map<std::filesystem::path, std::vector<std::size_t>> by_path_;
};

// Precomputed embeddings (entries without layer_id) for one source_id.
class EmbeddingSource : public RepresentationSource {
 public:
  EmbeddingSource(std::shared_ptr<const EmbeddingManifest> manifest, std::string source_id);

  std::string name() const override { return source_id_; }
  RepresentationTraits traits() const override { return traits_; }
  bool uses_audio() const override { return false; }
  Representation lookup(const Corpus& corpus, std::size_t dataset,
                        std::size_t index) const override;

 private:
  std::shared_ptr<const EmbeddingManifest> manifest_;
  std::string source_id_;
  RepresentationTraits traits_;
  EntryIndex index_;
};

// Gatys or Huang style embeddings from layer taps (entries with layer_id) for
// one source_id, concatenated over layers in manifest order. Named
// "<source_id>-gatys" / "<source_id>-huang".
class StyleSource : public RepresentationSource {
 public:
  StyleSource(std::shared_ptr<const EmbeddingManifest> manifest, std::string source_id,
              StyleKind kind, GramNormalization norm = GramNormalization::kSpatialMean);

  std::string name() const override;
  RepresentationTraits traits() const override;
  bool uses_audio() const override { return false; }
  Representation lookup(const Corpus& corpus, std::size_t dataset,
                        std::size_t index) const override;

 private:
  std::shared_ptr<const EmbeddingManifest> manifest_;
  std::string source_id_;
  StyleKind kind_;
  GramNormalization norm_;
  EntryIndex index_;
};

// One EmbeddingSource per plain source_id and a Gatys/Huang pair per layer-tap
// source_id, in order of first appearance.
std::vector<std::unique_ptr<RepresentationSource>> sources_from_manifest(
    std::shared_ptr<const EmbeddingManifest> manifest,
    GramNormalization norm = GramNormalization::kSpatialMean);

// Flattened-vector cache keyed by (source config, dataset, sample, padded
// length or window). Concurrent readers and writers only ever see complete
// entries, and concurrent requests for one key compute it once. With a
// directory, entries are also persisted with atomic writes.
class FeatureCache {
 public:
  explicit FeatureCache(std::size_t byte_budget = std::size_t{1} << 30,
                        std::optional<std::filesystem::path> dir = std::nullopt);

  using Vector = std::shared_ptr<const std::vector<double>>;
  Vector get_or_compute(const std::string& key,
                        const std::function<std::vector<double>()>& compute);
  void clear();
  std::size_t entries() const;

 private:
  std::size_t budget_;
  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::map<std::string, Vector> memo_;
  std::map<std::string, std::shared_future<Vector>> in_flight_;
  std::vector<std::string> insertion_order_;
  std::size_t bytes_ = 0;
};

struct EvalOptions {
  std::vector<LengthStrategyKind> strategies = {LengthStrategyKind::kTimeAverage,
                                                LengthStrategyKind::kDynamicPad};
  std::vector<DistanceKind> distances = {DistanceKind::kL2, DistanceKind::kCosine};
  std::vector<Metric> metrics = {Metric::kMae, Metric::kKendall, Metric::kSpearman,
                                 Metric::kNdcg, Metric::kTriplet};
  MetricOptions metric_options;
  double ball_epsilon = kBallEpsilon;
  std::size_t threads = 0;  // 0: TIMBRE_ALIGN_THREADS or hardware
  std::optional<std::filesystem::path> cache_dir;
};

// Scores for one (representation, strategy, distance, metric).
struct MetricSlice {
  std::map<std::string, std::optional<double>> per_dataset;
  std::optional<double> aggregate;
  MetricTally total;
};

using MetricMap = std::map<std::string, MetricSlice>;
using DistanceMap = std::map<std::string, MetricMap>;
using StrategyMap = std::map<std::string, DistanceMap>;

struct AlignmentReport {
  // representation -> strategy -> distance -> metric.
  std::map<std::string, StrategyMap> results;
  std::vector<std::string> warnings;

  // Number of (representation, strategy, distance) configurations.
  std::size_t configurations() const;
  // configurations() x metrics.
  std::size_t scores() const;
};

// Builds predicted blocks for every requested configuration, rescales them and
// the ground truth per dataset, and aggregates rank metrics as a global row
// mean and MAE as a global pair mean. A failing dataset is reported as a
// warning and leaves null scores; it never aborts the run.
AlignmentReport evaluate(const Corpus& corpus,
                         const std::vector<const RepresentationSource*>& sources,
                         const EvalOptions& options);

// Convenience for in-process models (e.g. at training time).
AlignmentReport evaluate_model(const Corpus& corpus, const std::string& name,
                               FeatureFunction model, RepresentationTraits traits,
                               std::uint32_t sample_rate, const EvalOptions& options);

}  // namespace timbre

#endif  // TIMBRE_EVALUATE_H_
