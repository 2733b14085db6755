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

#include "timbre/evaluate.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <utility>

#include "timbre/error.h"
#include "timbre/npy.h"
#include "timbre/parallel.h"

namespace timbre {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Corpus

namespace {

void check_names(const std::vector<TimbreDataset>& datasets) {
  std::set<std::string> names;
  for (const auto& d : datasets) {
    if (d.name.empty() || d.name.rfind("__", 0) == 0) {
      throw InputError(d.name, "name", "dataset names must be non-empty and not start with '__'");
    }
    if (!names.insert(d.name).second) {
      throw InputError(d.name, "name", "duplicate dataset name in corpus");
    }
  }
}

}  // namespace

Corpus::Corpus(std::vector<TimbreDataset> datasets) : datasets_(std::move(datasets)) {
  check_names(datasets_);
}

Corpus::Corpus(std::vector<TimbreDataset> datasets,
               std::vector<std::vector<Waveform>> waveforms)
    : datasets_(std::move(datasets)) {
  check_names(datasets_);
  if (waveforms.size() != datasets_.size()) {
    throw ShapeError("one waveform list per dataset required");
  }
  for (std::size_t d = 0; d < datasets_.size(); ++d) {
    if (waveforms[d].size() != datasets_[d].size()) {
      throw ShapeError("waveform count differs from dataset size for " + datasets_[d].name);
    }
    for (std::size_t i = 0; i < waveforms[d].size(); ++i) {
      validate_waveform(waveforms[d][i], datasets_[d].name.c_str());
      audio_[{d, i, 0}] = std::make_shared<const Waveform>(std::move(waveforms[d][i]));
    }
  }
}

std::shared_ptr<const Waveform> Corpus::waveform(std::size_t dataset, std::size_t index,
                                                 std::uint32_t rate) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = audio_.find({dataset, index, rate}); it != audio_.end()) return it->second;
  }
  std::shared_ptr<const Waveform> native;
  {
    std::lock_guard lock(mu_);
    if (auto it = audio_.find({dataset, index, 0}); it != audio_.end()) native = it->second;
  }
  if (!native) {
    const auto& d = datasets_.at(dataset);
    native = std::make_shared<const Waveform>(decode_wav(d.audio_path(index)));
    std::lock_guard lock(mu_);
    native = audio_.try_emplace({dataset, index, 0}, native).first->second;
  }
  if (rate == 0 || rate == native->sample_rate) return native;
  auto converted = std::make_shared<const Waveform>(resample(*native, rate));
  std::lock_guard lock(mu_);
  return audio_.try_emplace({dataset, index, rate}, converted).first->second;
}

// ---------------------------------------------------------------------------
// Sources

Representation RepresentationSource::compute(const Waveform&) const {
  throw NotApplicableError("source '" + name() + "' is not computed from audio");
}

Representation RepresentationSource::lookup(const Corpus&, std::size_t, std::size_t) const {
  throw NotApplicableError("source '" + name() + "' has no precomputed representations");
}

FunctionSource::FunctionSource(std::string name, FeatureFunction fn,
                               RepresentationTraits traits, std::uint32_t sample_rate,
                               std::string cache_key)
    : name_(std::move(name)),
      fn_(std::move(fn)),
      traits_(traits),
      rate_(sample_rate),
      key_(cache_key.empty() ? name_ : std::move(cache_key)) {}

std::unique_ptr<RepresentationSource> make_feature_source(const std::string& name,
                                                          std::optional<double> fixed_window) {
  RepresentationTraits traits;
  traits.has_time_axis = true;
  if (fixed_window) {
    traits.shift_sensitive = true;
    traits.window_seconds = fixed_window;
  }
  const std::string suffix = fixed_window ? fmt::format("@{}s", *fixed_window) : "";
  if (name == "mfcc") {
    const MfccConfig cfg;
    return std::make_unique<FunctionSource>(
        "mfcc", [cfg](const Waveform& w) { return mfcc(w, cfg); }, traits, cfg.sample_rate,
        fmt::format("mfcc:n={},sr={},fft={},hop={},mels={}{}", cfg.n_mfcc, cfg.sample_rate,
                    cfg.fft_size, cfg.hop, cfg.n_mels, suffix));
  }
  if (name == "mss") {
    return std::make_unique<FunctionSource>(
        "mss", [](const Waveform& w) { return multi_scale_spectrogram(w); }, traits, 44100,
        "mss:sr=44100,fft=4096..128" + suffix);
  }
  throw InputError("--features", name, "unknown built-in feature (expected mfcc or mss)");
}

EntryIndex::EntryIndex(const EmbeddingManifest& manifest, std::vector<std::size_t> entries)
    : root_(manifest.root) {
  for (std::size_t e : entries) {
    const auto& entry = manifest.entries[e];
    by_key_[entry.audio].push_back(e);
    std::error_code ec;
    const fs::path resolved = fs::weakly_canonical(manifest.root / entry.audio, ec);
    if (!ec) by_path_[resolved].push_back(e);
  }
}

const std::vector<std::size_t>& EntryIndex::find(const Corpus& corpus, std::size_t dataset,
                                                 std::size_t index) const {
  const auto& d = corpus.datasets().at(dataset);
  if (auto it = by_key_.find(d.name + "/" + d.audio[index]); it != by_key_.end()) {
    return it->second;
  }
  std::error_code ec;
  const fs::path resolved = fs::weakly_canonical(d.audio_path(index), ec);
  if (!ec) {
    if (auto it = by_path_.find(resolved); it != by_path_.end()) return it->second;
  }
  if (auto it = by_key_.find(d.audio[index]); it != by_key_.end()) return it->second;
  throw InputError(d.name, "audio[" + std::to_string(index) + "]",
                   "no interchange entry for " + d.audio[index]);
}

namespace {

std::vector<std::size_t> select_entries(const EmbeddingManifest& m, const std::string& source_id,
                                        bool layer_taps) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < m.entries.size(); ++e) {
    const auto& entry = m.entries[e];
    if (entry.source_id == source_id && entry.layer_id.has_value() == layer_taps) {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace

EmbeddingSource::EmbeddingSource(std::shared_ptr<const EmbeddingManifest> manifest,
                                 std::string source_id)
    : manifest_(std::move(manifest)),
      source_id_(std::move(source_id)),
      index_(*manifest_, select_entries(*manifest_, source_id_, false)) {
  const auto entries = select_entries(*manifest_, source_id_, false);
  if (entries.empty()) {
    throw InputError(manifest_->root.string(), source_id_, "no embedding entries");
  }
  const auto& first = manifest_->entries[entries.front()];
  traits_.has_time_axis = first.time_axis.has_value();
  traits_.shift_sensitive = first.shift_sensitive;
  traits_.window_seconds = first.window_seconds;
  for (std::size_t e : entries) {
    const auto& entry = manifest_->entries[e];
    if (entry.time_axis.has_value() != traits_.has_time_axis ||
        entry.shift_sensitive != traits_.shift_sensitive) {
      throw InputError(manifest_->root.string(), source_id_,
                       "entries disagree on time_axis or shift_sensitive");
    }
  }
}

Representation EmbeddingSource::lookup(const Corpus& corpus, std::size_t dataset,
                                       std::size_t index) const {
  const auto& hits = index_.find(corpus, dataset, index);
  if (hits.size() != 1) {
    throw InputError(corpus.datasets()[dataset].name, source_id_,
                     "expected exactly one embedding per sample");
  }
  return load_embedding(manifest_->entries[hits.front()], manifest_->root);
}

StyleSource::StyleSource(std::shared_ptr<const EmbeddingManifest> manifest,
                         std::string source_id, StyleKind kind, GramNormalization norm)
    : manifest_(std::move(manifest)),
      source_id_(std::move(source_id)),
      kind_(kind),
      norm_(norm),
      index_(*manifest_, select_entries(*manifest_, source_id_, true)) {
  if (select_entries(*manifest_, source_id_, true).empty()) {
    throw InputError(manifest_->root.string(), source_id_, "no layer-tap entries");
  }
}

std::string StyleSource::name() const {
  return source_id_ + "-" + style_kind_name(kind_);
}

RepresentationTraits StyleSource::traits() const {
  RepresentationTraits t;
  t.has_time_axis = false;
  return t;
}

Representation StyleSource::lookup(const Corpus& corpus, std::size_t dataset,
                                   std::size_t index) const {
  std::vector<FeatureMap> layers;
  for (std::size_t e : index_.find(corpus, dataset, index)) {
    const auto& entry = manifest_->entries[e];
    EmbeddingEntry as_map = entry;
    as_map.time_axis.reset();
    Representation raw = load_embedding(as_map, manifest_->root);
    const Tensor& t = raw.parts.front();
    layers.push_back(entry.layout == TensorLayout::kTokens
                         ? tokens_as_featuremap(t, *entry.layer_id)
                         : feature_map_from_tensor(t, *entry.layer_id));
  }
  const StyleEmbedding emb = layer_stack_style(layers, kind_, norm_);
  const std::size_t n = emb.data.size();
  return make_representation(Tensor({n}, emb.data), std::nullopt, name());
}

std::vector<std::unique_ptr<RepresentationSource>> sources_from_manifest(
    std::shared_ptr<const EmbeddingManifest> manifest, GramNormalization norm) {
  std::vector<std::pair<std::string, bool>> seen;
  for (const auto& e : manifest->entries) {
    const std::pair<std::string, bool> key{e.source_id, e.layer_id.has_value()};
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) seen.push_back(key);
  }
  std::vector<std::unique_ptr<RepresentationSource>> out;
  for (const auto& [id, taps] : seen) {
    if (taps) {
      out.push_back(std::make_unique<StyleSource>(manifest, id, StyleKind::kGatys, norm));
      out.push_back(std::make_unique<StyleSource>(manifest, id, StyleKind::kHuang, norm));
    } else {
      out.push_back(std::make_unique<EmbeddingSource>(manifest, id));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Feature cache

namespace {

constexpr char kCacheMagic[8] = {'T', 'A', 'C', 'A', 'C', 'H', 'E', '1'};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int s = 0; s < 64; s += 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

std::uint64_t load_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int k = 7; k >= 0; --k) v = (v << 8) | p[k];
  return v;
}

std::optional<std::vector<double>> read_cache_file(const fs::path& path,
                                                   const std::string& key) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 24 || std::memcmp(bytes.data(), kCacheMagic, 8) != 0) return std::nullopt;
  const std::uint64_t key_len = load_u64(bytes.data() + 8);
  if (bytes.size() < 24 + key_len) return std::nullopt;
  if (std::string(bytes.begin() + 16, bytes.begin() + 16 + static_cast<std::ptrdiff_t>(key_len)) !=
      key) {
    return std::nullopt;
  }
  const std::uint64_t count = load_u64(bytes.data() + 16 + key_len);
  const std::size_t offset = 24 + key_len;
  if (bytes.size() != offset + count * 8) return std::nullopt;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t raw = load_u64(bytes.data() + offset + 8 * k);
    std::memcpy(&out[k], &raw, sizeof raw);
  }
  return out;
}

void write_cache_file(const fs::path& path, const std::string& key,
                      const std::vector<double>& values) {
  std::vector<std::uint8_t> bytes(kCacheMagic, kCacheMagic + 8);
  append_u64(bytes, key.size());
  bytes.insert(bytes.end(), key.begin(), key.end());
  append_u64(bytes, values.size());
  for (double v : values) {
    std::uint64_t raw;
    std::memcpy(&raw, &v, sizeof raw);
    append_u64(bytes, raw);
  }
  write_file_atomic(path, bytes);
}

}  // namespace

FeatureCache::FeatureCache(std::size_t byte_budget, std::optional<fs::path> dir)
    : budget_(byte_budget), dir_(std::move(dir)) {
  if (dir_) fs::create_directories(*dir_);
}

FeatureCache::Vector FeatureCache::get_or_compute(
    const std::string& key, const std::function<std::vector<double>()>& compute) {
  std::promise<Vector> promise;
  {
    std::unique_lock lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (auto it = in_flight_.find(key); it != in_flight_.end()) {
      std::shared_future<Vector> pending = it->second;
      lock.unlock();
      return pending.get();
    }
    in_flight_.emplace(key, promise.get_future().share());
  }

  Vector entry;
  try {
    std::optional<std::vector<double>> values;
    fs::path file;
    if (dir_) {
      file = *dir_ / fmt::format("{:016x}.tacache", fnv1a(key));
      values = read_cache_file(file, key);
    }
    if (!values) {
      values = compute();
      if (dir_) write_cache_file(file, key, *values);
    }
    entry = std::make_shared<const std::vector<double>>(std::move(*values));
  } catch (...) {
    std::lock_guard lock(mu_);
    in_flight_.erase(key);
    promise.set_exception(std::current_exception());
    throw;
  }

  std::lock_guard lock(mu_);
  in_flight_.erase(key);
  promise.set_value(entry);
  memo_.emplace(key, entry);
  insertion_order_.push_back(key);
  bytes_ += entry->size() * sizeof(double);
  while (bytes_ > budget_ && insertion_order_.size() > 1) {
    const std::string victim = insertion_order_.front();
    insertion_order_.erase(insertion_order_.begin());
    auto v = memo_.find(victim);
    bytes_ -= v->second->size() * sizeof(double);
    memo_.erase(v);
  }
  return entry;
}

void FeatureCache::clear() {
  std::lock_guard lock(mu_);
  memo_.clear();
  insertion_order_.clear();
  bytes_ = 0;
}

std::size_t FeatureCache::entries() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

// ---------------------------------------------------------------------------
// Evaluation

std::size_t AlignmentReport::configurations() const {
  std::size_t n = 0;
  for (const auto& [rep, strategies] : results) {
    for (const auto& [strategy, distances] : strategies) n += distances.size();
  }
  return n;
}

std::size_t AlignmentReport::scores() const {
  std::size_t n = 0;
  for (const auto& [rep, strategies] : results) {
    for (const auto& [strategy, distances] : strategies) {
      for (const auto& [distance, metrics] : distances) n += metrics.size();
    }
  }
  return n;
}

namespace {

template <typename T>
std::vector<T> dedupe(const std::vector<T>& in) {
  std::vector<T> out;
  for (const T& v : in) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

// Produces the aligned vector pair for (i, j) under one resolved strategy.
class PairVectors {
 public:
  PairVectors(const Corpus& corpus, const RepresentationSource& source,
              const LengthStrategy& strategy, std::size_t dataset, FeatureCache& cache)
      : corpus_(corpus),
        source_(source),
        strategy_(strategy),
        dataset_(dataset),
        cache_(cache),
        prefix_(fmt::format("{}|{}|{}|", source.cache_key(),
                            corpus.datasets()[dataset].name, dataset)) {}

  std::pair<FeatureCache::Vector, FeatureCache::Vector> get(std::size_t i, std::size_t j) {
    const bool audio = source_.uses_audio();
    const bool framed = source_.traits().has_time_axis;
    switch (strategy_.kind) {
      case LengthStrategyKind::kTimeAverage:
        return {averaged(i), averaged(j)};
      case LengthStrategyKind::kFixedWindow:
        return {audio ? windowed(i) : plain(i), audio ? windowed(j) : plain(j)};
      case LengthStrategyKind::kDynamicPad:
        break;
    }
    if (!framed) return {plain(i), plain(j)};
    if (audio) {
      const std::size_t len = std::max(waveform(i)->samples.size(), waveform(j)->samples.size());
      return {padded_audio(i, len), padded_audio(j, len)};
    }
    const std::size_t frames = std::max(stored(i)->frames(), stored(j)->frames());
    return {padded_frames(i, frames), padded_frames(j, frames)};
  }

 private:
  std::shared_ptr<const Waveform> waveform(std::size_t i) const {
    return corpus_.waveform(dataset_, i, source_.sample_rate());
  }

  std::shared_ptr<const Representation> stored(std::size_t i) {
    {
      std::lock_guard lock(mu_);
      if (auto it = stored_.find(i); it != stored_.end()) return it->second;
    }
    auto rep = std::make_shared<const Representation>(representation(i));
    std::lock_guard lock(mu_);
    return stored_.try_emplace(i, rep).first->second;
  }

  Representation representation(std::size_t i) const {
    Representation r = source_.uses_audio() ? source_.compute(*waveform(i))
                                            : source_.lookup(corpus_, dataset_, i);
    for (const auto& p : r.parts) require_finite(p, source_.name());
    return r;
  }

  FeatureCache::Vector plain(std::size_t i) {
    return cache_.get_or_compute(prefix_ + fmt::format("raw|{}", i),
                                 [&] { return representation(i).flatten(); });
  }

  FeatureCache::Vector averaged(std::size_t i) {
    return cache_.get_or_compute(prefix_ + fmt::format("avg|{}", i),
                                 [&] { return time_average(representation(i)).flatten(); });
  }

  FeatureCache::Vector windowed(std::size_t i) {
    return cache_.get_or_compute(
        prefix_ + fmt::format("fixed{}|{}", strategy_.window_seconds, i), [&] {
          return source_.compute(fixed_window(*waveform(i), strategy_.window_seconds)).flatten();
        });
  }

  FeatureCache::Vector padded_audio(std::size_t i, std::size_t len) {
    return cache_.get_or_compute(prefix_ + fmt::format("pad{}|{}", len, i), [&] {
      Representation r = source_.compute(pad_right(*waveform(i), len));
      for (const auto& p : r.parts) require_finite(p, source_.name());
      return r.flatten();
    });
  }

  FeatureCache::Vector padded_frames(std::size_t i, std::size_t frames) {
    return cache_.get_or_compute(prefix_ + fmt::format("frames{}|{}", frames, i),
                                 [&] { return pad_frames(*stored(i), frames).flatten(); });
  }

  const Corpus& corpus_;
  const RepresentationSource& source_;
  LengthStrategy strategy_;
  std::size_t dataset_;
  FeatureCache& cache_;
  std::string prefix_;
  std::mutex mu_;
  std::map<std::size_t, std::shared_ptr<const Representation>> stored_;
};

struct PairResult {
  std::vector<std::optional<double>> values;  // per requested distance
  double diff2 = 0.0, norm_u2 = 0.0, norm_v2 = 0.0;
  std::optional<std::string> error;
};

struct DatasetOutcome {
  bool failed = false;
  // Per distance: tallies for each metric, or nothing if the block was unusable.
  std::vector<std::optional<BlockScores>> scores;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

}  // namespace

AlignmentReport evaluate(const Corpus& corpus,
                         const std::vector<const RepresentationSource*>& sources,
                         const EvalOptions& options) {
  if (sources.empty()) throw InputError("evaluate", "sources", "no representation source");
  const auto strategies = dedupe(options.strategies);
  const auto distances = dedupe(options.distances);
  const auto metrics = dedupe(options.metrics);
  if (strategies.empty() || distances.empty() || metrics.empty()) {
    throw InputError("evaluate", "options", "need at least one strategy, distance and metric");
  }
  if (!(options.metric_options.triplet.margin >= 0.0 &&
        options.metric_options.triplet.margin < 1.0)) {
    throw InputError("evaluate", "margin", "must lie in [0, 1)");
  }
  const std::size_t threads = resolve_thread_count(options.threads);
  const auto& datasets = corpus.datasets();

  AlignmentReport report;

  // Ground truth, rescaled once per dataset.
  std::vector<std::optional<Block>> truth(datasets.size());
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    Block gt = ground_truth_block(datasets[d]);
    if (gt.defined_pairs() == 0) {
      report.warnings.push_back(fmt::format("dataset {}: no ratings; skipped", datasets[d].name));
      continue;
    }
    if (!gt.rescale()) {
      report.warnings.push_back(
          fmt::format("dataset {}: constant ground-truth ratings (degenerate block)",
                      datasets[d].name));
    }
    truth[d] = std::move(gt);
  }

  {
    std::set<std::string> names;
    for (const auto* s : sources) {
      if (s->name() == "warnings") {
        throw InputError("evaluate", s->name(), "reserved representation name");
      }
      if (!names.insert(s->name()).second) {
        throw InputError("evaluate", s->name(), "duplicate representation name");
      }
    }
  }

  for (const RepresentationSource* source : sources) {
    const std::string rep_name = source->name();
    for (LengthStrategyKind requested : strategies) {
      LengthStrategy strategy;
      try {
        strategy = resolve_strategy(source->traits(), requested);
      } catch (const NotApplicableError&) {
        continue;  // e.g. no time average for single-frame representations
      }
      const std::string strategy_key = strategy.report_key();

      std::vector<DatasetOutcome> outcomes(datasets.size());
      for (std::size_t d = 0; d < datasets.size(); ++d) {
        auto& outcome = outcomes[d];
        outcome.scores.assign(distances.size(), std::nullopt);
        if (!truth[d]) {
          outcome.failed = true;
          continue;
        }
        const Block& gt = *truth[d];
        const auto& ds = datasets[d];

        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < gt.size(); ++i) {
          for (std::size_t j = i + 1; j < gt.size(); ++j) {
            if (gt.defined(i, j)) pairs.emplace_back(i, j);
          }
        }

        FeatureCache cache(std::size_t{1} << 30, options.cache_dir);
        PairVectors vectors(corpus, *source, strategy, d, cache);
        std::vector<PairResult> results(pairs.size());
        parallel_for(pairs.size(), threads, [&](std::size_t p) {
          auto& r = results[p];
          try {
            const auto [u, v] = vectors.get(pairs[p].first, pairs[p].second);
            if (u->size() != v->size() || u->empty()) {
              throw ShapeError(fmt::format("representation sizes differ ({} vs {})", u->size(),
                                           v->size()));
            }
            r.values.resize(distances.size());
            for (std::size_t k = 0; k < distances.size(); ++k) {
              if (distances[k] == DistanceKind::kPoincare) continue;
              r.values[k] = distance(distances[k], *u, *v);
            }
            r.norm_u2 = dot(*u, *u);
            r.norm_v2 = dot(*v, *v);
            for (std::size_t k = 0; k < u->size(); ++k) {
              const double diff = (*u)[k] - (*v)[k];
              r.diff2 += diff * diff;
            }
          } catch (const std::exception& e) {
            r.error = e.what();
          }
        });

        const auto first_error =
            std::find_if(results.begin(), results.end(), [](const PairResult& r) {
              return r.error.has_value();
            });
        if (first_error != results.end()) {
          report.warnings.push_back(fmt::format("{} [{}] dataset {} failed: {}", rep_name,
                                                strategy_key, ds.name, *first_error->error));
          outcome.failed = true;
          continue;
        }

        // One common ball projection per (dataset, representation, strategy).
        double max_norm = 0.0;
        for (const auto& r : results) {
          max_norm = std::max({max_norm, std::sqrt(r.norm_u2), std::sqrt(r.norm_v2)});
        }
        const double scale = ball_projection_scale(std::span<const double>(&max_norm, 1),
                                                   options.ball_epsilon);

        for (std::size_t k = 0; k < distances.size(); ++k) {
          const DistanceKind dist = distances[k];
          Block pred(ds.name, ds.size());
          std::size_t undefined = 0;
          std::optional<std::string> poincare_error;
          for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto& r = results[p];
            std::optional<double> value = r.values[k];
            if (dist == DistanceKind::kPoincare) {
              const double s2 = scale * scale;
              const double denom = (1.0 - s2 * r.norm_u2) * (1.0 - s2 * r.norm_v2);
              const double dv = std::acosh(1.0 + 2.0 * s2 * r.diff2 / denom);
              if (!(denom > 0.0) || !std::isfinite(dv)) {
                poincare_error = "non-finite Poincare distance";
                break;
              }
              value = dv;
            }
            if (value) {
              pred.set(pairs[p].first, pairs[p].second, *value);
            } else {
              ++undefined;
            }
          }
          if (poincare_error) {
            report.warnings.push_back(fmt::format("{} [{}] {} dataset {}: {}", rep_name,
                                                  strategy_key, distance_name(dist), ds.name,
                                                  *poincare_error));
            continue;
          }
          if (undefined > 0) {
            report.warnings.push_back(
                fmt::format("{} [{}] {} dataset {}: {} pair(s) skipped (undefined distance, "
                            "zero vector)",
                            rep_name, strategy_key, distance_name(dist), ds.name, undefined));
          }
          if (pred.defined_pairs() == 0) {
            report.warnings.push_back(fmt::format("{} [{}] {} dataset {}: no defined pairs",
                                                  rep_name, strategy_key, distance_name(dist),
                                                  ds.name));
            continue;
          }
          if (!pred.rescale()) {
            report.warnings.push_back(
                fmt::format("{} [{}] {} dataset {}: constant predicted distances (degenerate "
                            "block scored as all zeros)",
                            rep_name, strategy_key, distance_name(dist), ds.name));
          }
          outcome.scores[k] = score_block(pred, gt, metrics, options.metric_options);
        }
      }

      auto& by_distance = report.results[rep_name][strategy_key];
      for (std::size_t k = 0; k < distances.size(); ++k) {
        auto& by_metric = by_distance[distance_name(distances[k])];
        for (Metric m : metrics) {
          MetricSlice slice;
          for (std::size_t d = 0; d < datasets.size(); ++d) {
            const auto& s = outcomes[d].scores[k];
            if (!s) {
              slice.per_dataset[datasets[d].name] = std::nullopt;
              continue;
            }
            const MetricTally& t = (*s)[metric_index(m)];
            slice.per_dataset[datasets[d].name] = t.mean();
            slice.total += t;
          }
          slice.aggregate = slice.total.mean();
          by_metric[metric_name(m)] = std::move(slice);
        }
      }
    }
  }
  return report;
}

AlignmentReport evaluate_model(const Corpus& corpus, const std::string& name,
                               FeatureFunction model, RepresentationTraits traits,
                               std::uint32_t sample_rate, const EvalOptions& options) {
  FunctionSource source(name, std::move(model), traits, sample_rate);
  return evaluate(corpus, {&source}, options);
}

}  // namespace timbre
