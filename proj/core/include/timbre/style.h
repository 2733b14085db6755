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

#ifndef TIMBRE_STYLE_H_
#define TIMBRE_STYLE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "timbre/tensor.h"

namespace timbre {

// Activations of one layer for one input: `channels` rows of `positions`
// spatial values each (any H x W or time x frequency grid flattened).
struct FeatureMap {
  std::size_t channels = 0;
  std::size_t positions = 0;
  std::vector<double> data;  // channels x positions, row-major
  std::string layer_id;

  double at(std::size_t c, std::size_t s) const { return data[c * positions + s]; }
};

// Channels-first tensor (C, ...) -> FeatureMap with S = product of the
// trailing axes (S = 1 for a rank-1 tensor).
FeatureMap feature_map_from_tensor(const Tensor& t, std::string layer_id);

// Transformer tokens (T x C) -> FeatureMap with C channels over T positions.
FeatureMap tokens_as_featuremap(const Tensor& tokens, std::string layer_id);
// Inverse of tokens_as_featuremap.
Tensor featuremap_as_tokens(const FeatureMap& fm);

enum class StyleKind { kGatys, kHuang };

const char* style_kind_name(StyleKind kind);

enum class GramNormalization {
  kSpatialMean,  // divide inner products by S
  kRaw,
};

// C x C matrix of channel inner products over spatial positions.
Tensor gram_style(const FeatureMap& fm,
                  GramNormalization norm = GramNormalization::kSpatialMean);

// [mean_1..mean_C, std_1..std_C]; population standard deviation.
std::vector<double> meanstd_style(const FeatureMap& fm);

struct StyleEmbedding {
  std::vector<double> data;
  StyleKind kind = StyleKind::kGatys;
  std::vector<std::string> layer_ids;
};

StyleEmbedding style_embedding(const FeatureMap& fm, StyleKind kind,
                               GramNormalization norm = GramNormalization::kSpatialMean);

// Concatenates same-kind embeddings in order. Throws ShapeError on an empty
// list or mixed kinds.
StyleEmbedding concat_style(std::span<const StyleEmbedding> embeddings);

// One embedding per layer, then concatenated in layer order.
StyleEmbedding layer_stack_style(std::span<const FeatureMap> layers, StyleKind kind,
                                 GramNormalization norm = GramNormalization::kSpatialMean);

}  // namespace timbre

#endif  // TIMBRE_STYLE_H_
