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

#include "timbre/embeddings.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "timbre/error.h"
#include "timbre/npy.h"

namespace timbre {

namespace fs = std::filesystem;
using nlohmann::json;

EmbeddingManifest parse_embedding_manifest(const std::string& text,
                                           const std::string& source,
                                           const fs::path& root) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source, "", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw InputError(source, "entries", "missing or not an array");
  }
  EmbeddingManifest m;
  m.root = root;
  for (std::size_t k = 0; k < doc["entries"].size(); ++k) {
    const auto& e = doc["entries"][k];
    const std::string field = "entries[" + std::to_string(k) + "]";
    if (!e.is_object()) throw InputError(source, field, "not an object");
    auto require_string = [&](const char* key) {
      if (!e.contains(key) || !e[key].is_string()) {
        throw InputError(source, field + "." + key, "missing or not a string");
      }
      return e[key].get<std::string>();
    };
    EmbeddingEntry entry;
    entry.audio = require_string("audio");
    entry.tensor = require_string("tensor");
    entry.source_id = require_string("source_id");
    if (!e.contains("time_axis")) {
      throw InputError(source, field + ".time_axis", "missing (use null for none)");
    }
    if (!e["time_axis"].is_null()) {
      if (!e["time_axis"].is_number_unsigned()) {
        throw InputError(source, field + ".time_axis", "must be null or a non-negative integer");
      }
      entry.time_axis = e["time_axis"].get<std::size_t>();
    }
    if (e.contains("layer_id")) entry.layer_id = require_string("layer_id");
    if (e.contains("layout")) {
      const std::string layout = require_string("layout");
      if (layout == "channels_first") {
        entry.layout = TensorLayout::kChannelsFirst;
      } else if (layout == "tokens") {
        entry.layout = TensorLayout::kTokens;
      } else {
        throw InputError(source, field + ".layout", "unknown layout '" + layout + "'");
      }
    }
    if (e.contains("window_seconds") && !e["window_seconds"].is_null()) {
      if (!e["window_seconds"].is_number() || !(e["window_seconds"].get<double>() > 0.0)) {
        throw InputError(source, field + ".window_seconds", "must be a positive number");
      }
      entry.window_seconds = e["window_seconds"].get<double>();
    }
    if (e.contains("shift_sensitive")) {
      if (!e["shift_sensitive"].is_boolean()) {
        throw InputError(source, field + ".shift_sensitive", "must be a boolean");
      }
      entry.shift_sensitive = e["shift_sensitive"].get<bool>();
    }
    if (e.contains("shape")) {
      if (!e["shape"].is_array()) throw InputError(source, field + ".shape", "not an array");
      std::vector<std::size_t> shape;
      for (const auto& d : e["shape"]) {
        if (!d.is_number_unsigned()) {
          throw InputError(source, field + ".shape", "dimensions must be non-negative integers");
        }
        shape.push_back(d.get<std::size_t>());
      }
      entry.shape = std::move(shape);
    }
    m.entries.push_back(std::move(entry));
  }
  return m;
}

EmbeddingManifest load_embedding_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_embedding_manifest(ss.str(), path.string(), path.parent_path());
}

std::string serialize_embedding_manifest(const EmbeddingManifest& manifest) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : manifest.entries) {
    nlohmann::ordered_json j;
    j["audio"] = e.audio;
    j["tensor"] = e.tensor;
    j["time_axis"] = e.time_axis ? nlohmann::ordered_json(*e.time_axis)
                                 : nlohmann::ordered_json(nullptr);
    j["source_id"] = e.source_id;
    if (e.layer_id) j["layer_id"] = *e.layer_id;
    if (e.layout == TensorLayout::kTokens) j["layout"] = "tokens";
    if (e.window_seconds) j["window_seconds"] = *e.window_seconds;
    if (e.shift_sensitive) j["shift_sensitive"] = true;
    if (e.shape) j["shape"] = *e.shape;
    entries.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

Representation load_embedding(const EmbeddingEntry& entry, const fs::path& root) {
  const fs::path path = root / fs::path(entry.tensor);
  Tensor t = read_npy(path);
  for (double v : t.data) {
    if (!std::isfinite(v)) throw InputError(path.string(), "data", "non-finite entry");
  }
  if (entry.shape && *entry.shape != t.shape) {
    throw InputError(path.string(), "shape", "tensor shape does not match manifest");
  }
  if (entry.time_axis && *entry.time_axis >= t.rank()) {
    throw InputError(path.string(), "time_axis", "time axis out of range for tensor rank");
  }
  if (t.size() == 0) throw InputError(path.string(), "shape", "empty tensor");
  Representation r;
  r.time_axis = entry.time_axis;
  r.source_id = entry.source_id;
  r.parts.push_back(std::move(t));
  return r;
}

}  // namespace timbre
