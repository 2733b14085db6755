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

#include "timbre/report.h"

#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"
#include "timbre/error.h"

namespace timbre {

using nlohmann::json;

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

namespace {

json number_or_null(const std::optional<double>& v) {
  return v ? json(round_significant(*v)) : json(nullptr);
}

json slice_json(const MetricSlice& slice) {
  json out = json::object();
  for (const auto& [dataset, score] : slice.per_dataset) out[dataset] = number_or_null(score);
  out["__aggregate__"] = number_or_null(slice.aggregate);
  out["__rows_evaluated__"] = slice.total.evaluated;
  out["__rows_skipped__"] = slice.total.skipped;
  out["__degenerate_rows__"] = slice.total.degenerate;
  out["__tied_pairs__"] = slice.total.tied_pairs;
  out["__triplets__"] = slice.total.triplets;
  return out;
}

json report_tree(const AlignmentReport& report) {
  json root = json::object();
  for (const auto& [rep, strategies] : report.results) {
    json& r = root[rep];
    r = json::object();
    for (const auto& [strategy, distances] : strategies) {
      for (const auto& [dist, metrics] : distances) {
        for (const auto& [metric, slice] : metrics) {
          r[strategy][dist][metric] = slice_json(slice);
        }
      }
    }
  }
  root["warnings"] = report.warnings;
  return root;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_json(const AlignmentReport& report) {
  return report_tree(report).dump(2) + "\n";
}

std::string report_csv(const AlignmentReport& report) {
  const json root = report_tree(report);
  std::string out = "representation,strategy,distance,metric,key,value\n";
  for (const auto& [rep, strategies] : root.items()) {
    if (rep == "warnings") continue;
    for (const auto& [strategy, distances] : strategies.items()) {
      for (const auto& [dist, metrics] : distances.items()) {
        for (const auto& [metric, leaves] : metrics.items()) {
          for (const auto& [key, value] : leaves.items()) {
            out += fmt::format("{},{},{},{},{},{}\n", csv_field(rep), csv_field(strategy),
                               csv_field(dist), csv_field(metric), csv_field(key),
                               value.is_null() ? std::string() : value.dump());
          }
        }
      }
    }
  }
  return out;
}

std::vector<AggregateScore> parse_report_aggregates(std::string_view text,
                                                    const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source, "", e.what());
  }
  if (!root.is_object()) throw InputError(source, "", "report must be a JSON object");
  std::vector<AggregateScore> out;
  for (const auto& [rep, strategies] : root.items()) {
    if (rep == "warnings") continue;
    if (!strategies.is_object()) throw InputError(source, rep, "expected an object");
    for (const auto& [strategy, distances] : strategies.items()) {
      if (!distances.is_object()) throw InputError(source, rep + "." + strategy, "expected an object");
      for (const auto& [dist, metrics] : distances.items()) {
        if (!metrics.is_object()) {
          throw InputError(source, rep + "." + strategy + "." + dist, "expected an object");
        }
        for (const auto& [metric, leaves] : metrics.items()) {
          const std::string field = fmt::format("{}.{}.{}.{}", rep, strategy, dist, metric);
          if (!leaves.is_object() || !leaves.contains("__aggregate__")) {
            throw InputError(source, field, "missing __aggregate__");
          }
          const json& agg = leaves["__aggregate__"];
          if (!agg.is_null() && !agg.is_number()) {
            throw InputError(source, field + ".__aggregate__", "expected a number or null");
          }
          out.push_back({rep, strategy, dist, metric,
                         agg.is_null() ? std::nullopt : std::optional<double>(agg.get<double>())});
        }
      }
    }
  }
  return out;
}

}  // namespace timbre
