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

#include "cli.h"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "timbre/error.h"
#include "timbre/evaluate.h"
#include "timbre/npy.h"
#include "timbre/plot.h"
#include "timbre/report.h"
#include "timbre/summary.h"

namespace timbre::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string manifests;
  std::vector<std::string> features;
  std::vector<std::string> embeddings;
  std::vector<std::string> lengths = {"avg", "dynamic"};
  std::vector<std::string> distances = {"l2", "cosine"};
  std::vector<std::string> metrics = {"mae", "kendall", "spearman", "ndcg", "triplet"};
  double margin = 0.1;
  std::string ndcg_gain = "linear";
  std::string gram = "mean";
  std::optional<double> fixed_window;
  std::string out = "report.json";
  std::string csv;
  std::string plot;
  std::size_t threads = 0;
  std::string cache_dir;
};

void write_text(const std::string& path, const std::string& text) {
  try {
    write_file_atomic(path, std::vector<std::uint8_t>(text.begin(), text.end()));
  } catch (const std::exception& e) {
    throw InputError(path, "", fmt::format("cannot write output: {}", e.what()));
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "", "cannot open file");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

EvalOptions eval_options(const RunConfig& cfg) {
  EvalOptions o;
  o.strategies.clear();
  for (const auto& s : cfg.lengths) o.strategies.push_back(parse_length_strategy(s));
  o.distances.clear();
  for (const auto& d : cfg.distances) o.distances.push_back(parse_distance(d));
  o.metrics.clear();
  for (const auto& m : cfg.metrics) o.metrics.push_back(parse_metric(m));
  if (!(cfg.margin >= 0.0 && cfg.margin < 1.0)) {
    throw InputError("--margin", "", "must lie in [0, 1)");
  }
  o.metric_options.triplet.margin = cfg.margin;
  if (cfg.ndcg_gain == "linear") {
    o.metric_options.gain = NdcgGain::kLinear;
  } else if (cfg.ndcg_gain == "exponential") {
    o.metric_options.gain = NdcgGain::kExponential;
  } else {
    throw InputError("--ndcg-gain", cfg.ndcg_gain, "expected linear or exponential");
  }
  o.threads = cfg.threads;
  if (!cfg.cache_dir.empty()) o.cache_dir = cfg.cache_dir;
  return o;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.features.empty() && cfg.embeddings.empty()) {
    throw InputError("eval", "--features/--embeddings", "no representation source given");
  }
  const EvalOptions options = eval_options(cfg);
  if (cfg.gram != "mean" && cfg.gram != "raw") {
    throw InputError("--gram", cfg.gram, "expected mean or raw");
  }
  const GramNormalization gram =
      cfg.gram == "raw" ? GramNormalization::kRaw : GramNormalization::kSpatialMean;

  LoadOptions load;
  load.require_audio = !cfg.features.empty();
  if (!fs::is_directory(cfg.manifests)) {
    throw InputError(cfg.manifests, "--manifests", "not a directory");
  }
  const Corpus corpus(load_corpus(cfg.manifests, load));

  std::vector<std::unique_ptr<RepresentationSource>> owned;
  for (const auto& f : cfg.features) owned.push_back(make_feature_source(f, cfg.fixed_window));
  for (const auto& dir : cfg.embeddings) {
    fs::path path = dir;
    if (fs::is_directory(path)) path /= "manifest.json";
    auto manifest = std::make_shared<const EmbeddingManifest>(load_embedding_manifest(path));
    for (auto& s : sources_from_manifest(manifest, gram)) owned.push_back(std::move(s));
  }
  std::vector<const RepresentationSource*> sources;
  for (const auto& s : owned) sources.push_back(s.get());

  const AlignmentReport report = evaluate(corpus, sources, options);

  write_text(cfg.out, report_json(report));
  if (!cfg.csv.empty()) write_text(cfg.csv, report_csv(report));
  if (!cfg.plot.empty()) {
    write_text(cfg.plot, render_svg(parse_report_aggregates(report_json(report), cfg.out)));
  }
  fmt::print(out, "{} dataset(s), {} configuration(s), {} score slice(s) -> {}\n",
             corpus.datasets().size(), report.configurations(), report.scores(), cfg.out);
  if (report.warnings.empty()) return kExitOk;
  fmt::print(err, "{} warning(s):\n", report.warnings.size());
  for (const auto& w : report.warnings) fmt::print(err, "  {}\n", w);
  return kExitWarnings;
}

int cmd_summarize(const std::string& dir, double block, std::ostream& out, std::ostream& err) {
  std::vector<TimbreDataset> datasets;
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) throw InputError(dir, "", "not a directory");
    LoadOptions load;
    load.require_audio = false;
    datasets = load_corpus(dir, load);
  }
  fmt::print(out, "{:<28} {:>4} {:>6} {:>14} {:>16}\n", "dataset", "N", "pitch", "length (s)",
             "loudness (LUFS)");
  int code = kExitOk;
  for (const auto& d : datasets) {
    const DatasetSummary s = summarize_dataset(d, block);
    fmt::print(out, "{:<28} {:>4} {:>6} {:>14} {:>16}\n", s.name, s.n, s.pitch.value_or("-"),
               format_mean_std(s.length_mean, s.length_std),
               format_mean_std(s.loudness_mean, s.loudness_std));
    for (const auto& e : s.errors) {
      fmt::print(err, "warning: {}: {}\n", s.name, e);
      code = kExitWarnings;
    }
    if (s.silent > 0) {
      fmt::print(err, "warning: {}: {} silent sample(s) excluded from loudness\n", s.name,
                 s.silent);
      code = kExitWarnings;
    }
  }
  return code;
}

int cmd_plot(const std::string& report, const std::string& svg, std::ostream& out) {
  write_text(svg, render_svg(parse_report_aggregates(read_text(report), report)));
  fmt::print(out, "wrote {}\n", svg);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Timbre similarity alignment between audio representations and human ratings",
               "timbre_align"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* eval = app.add_subcommand("eval", "Score representations against the corpus");
  eval->add_option("--manifests", cfg.manifests, "Directory of dataset manifests")->required();
  eval->add_option("--features", cfg.features, "Built-in features (mfcc, mss)")->delimiter(',');
  eval->add_option("--embeddings", cfg.embeddings, "Interchange directories or manifest.json files")
      ->delimiter(',');
  eval->add_option("--length", cfg.lengths, "Length strategies (avg, dynamic)")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--distances", cfg.distances, "l2, l1, negdot, cosine, poincare")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--metrics", cfg.metrics, "mae, kendall, spearman, ndcg, triplet")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--margin", cfg.margin, "Triplet margin in [0, 1)")->capture_default_str();
  eval->add_option("--ndcg-gain", cfg.ndcg_gain, "linear or exponential")->capture_default_str();
  eval->add_option("--gram", cfg.gram, "Gram normalisation: mean or raw")->capture_default_str();
  eval->add_option("--fixed-window", cfg.fixed_window,
                   "Treat built-in features as shift-sensitive with this window (seconds)");
  eval->add_option("--out", cfg.out, "Report JSON path")->capture_default_str();
  eval->add_option("--csv", cfg.csv, "Optional CSV path");
  eval->add_option("--plot", cfg.plot, "Optional SVG path");
  eval->add_option("--threads", cfg.threads, "Worker threads (0: auto)");
  eval->add_option("--cache-dir", cfg.cache_dir, "Persistent feature cache directory");

  std::string summary_dir;
  double block = 0.08;
  auto* summarize = app.add_subcommand("summarize", "Per-dataset length and loudness table");
  summarize->add_option("--manifests", summary_dir, "Directory of dataset manifests")->required();
  summarize->add_option("--block", block, "Loudness gating block (seconds)")->capture_default_str();

  std::string report_path, svg_path;
  auto* plot = app.add_subcommand("plot", "Render a report as an SVG bar chart");
  plot->add_option("report", report_path, "Report JSON")->required();
  plot->add_option("--out", svg_path, "SVG path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInputError;
  }

  try {
    if (*eval) return cmd_eval(cfg, out, err);
    if (*summarize) return cmd_summarize(summary_dir, block, out, err);
    return cmd_plot(report_path, svg_path, out);
  } catch (const InputError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInputError;
  }
}

}  // namespace timbre::cli
