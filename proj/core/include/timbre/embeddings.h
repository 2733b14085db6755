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

#ifndef TIMBRE_EMBEDDINGS_H_
#define TIMBRE_EMBEDDINGS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "timbre/tensor.h"

namespace timbre {

// How a layer tap stores its activations.
enum class TensorLayout {
  kChannelsFirst,  // (C, ...) convolutional feature map
  kTokens,         // (T, C) transformer tokens
};

// One record of an interchange manifest.json:
//   {"audio": str, "tensor": str, "time_axis": int|null, "source_id": str,
//    "layer_id": str (optional; marks a feature map),
//    "layout": "channels_first"|"tokens" (optional, default channels_first),
//    "window_seconds": number|null (optional; fixed analysis window applied
//    by the producer), "shift_sensitive": bool (optional),
//    "shape": [int, ...] (optional; checked against the tensor)}
struct EmbeddingEntry {
  std::string audio;
  std::string tensor;
  std::optional<std::size_t> time_axis;
  std::string source_id;
  std::optional<std::string> layer_id;
  TensorLayout layout = TensorLayout::kChannelsFirst;
  std::optional<double> window_seconds;
  bool shift_sensitive = false;
  std::optional<std::vector<std::size_t>> shape;

  bool operator==(const EmbeddingEntry&) const = default;
};

struct EmbeddingManifest {
  std::filesystem::path root;  // directory holding manifest.json
  std::vector<EmbeddingEntry> entries;
};

EmbeddingManifest load_embedding_manifest(const std::filesystem::path& path);
EmbeddingManifest parse_embedding_manifest(const std::string& json,
                                           const std::string& source,
                                           const std::filesystem::path& root);
std::string serialize_embedding_manifest(const EmbeddingManifest& manifest);

// Reads the entry's tensor and checks it against the manifest: finite values,
// time axis within rank, declared shape. The tensor path resolves against
// `root`.
Representation load_embedding(const EmbeddingEntry& entry,
                              const std::filesystem::path& root);

}  // namespace timbre

#endif  // TIMBRE_EMBEDDINGS_H_
