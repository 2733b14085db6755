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

#include "timbre/style.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "timbre/error.h"

namespace timbre {

namespace {

void check(const FeatureMap& fm) {
  if (fm.channels == 0 || fm.positions == 0 ||
      fm.data.size() != fm.channels * fm.positions) {
    throw ShapeError("feature map '" + fm.layer_id + "' has an invalid shape");
  }
  for (double v : fm.data) {
    if (!std::isfinite(v)) {
      throw ShapeError("feature map '" + fm.layer_id + "' has a non-finite entry");
    }
  }
}

// Lexicographic order of the spatial columns. Summing in this order makes the
// statistics bit-identical under any permutation of spatial positions.
std::vector<std::size_t> canonical_positions(const FeatureMap& fm) {
  std::vector<std::size_t> order(fm.positions);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&fm](std::size_t x, std::size_t y) {
    for (std::size_t c = 0; c < fm.channels; ++c) {
      const double vx = fm.at(c, x);
      const double vy = fm.at(c, y);
      if (vx != vy) return vx < vy;
    }
    return false;
  });
  return order;
}

}  // namespace

const char* style_kind_name(StyleKind kind) {
  return kind == StyleKind::kGatys ? "gatys" : "huang";
}

FeatureMap feature_map_from_tensor(const Tensor& t, std::string layer_id) {
  if (t.rank() == 0) throw ShapeError("feature map tensor must have rank >= 1");
  FeatureMap fm;
  fm.channels = t.shape[0];
  fm.positions = fm.channels == 0 ? 0 : t.size() / fm.channels;
  fm.data = t.data;
  fm.layer_id = std::move(layer_id);
  check(fm);
  return fm;
}

FeatureMap tokens_as_featuremap(const Tensor& tokens, std::string layer_id) {
  if (tokens.rank() != 2) throw ShapeError("token block must be T x C");
  const std::size_t t_count = tokens.shape[0];
  const std::size_t c_count = tokens.shape[1];
  FeatureMap fm;
  fm.channels = c_count;
  fm.positions = t_count;
  fm.layer_id = std::move(layer_id);
  fm.data.resize(tokens.size());
  for (std::size_t t = 0; t < t_count; ++t) {
    for (std::size_t c = 0; c < c_count; ++c) {
      fm.data[c * t_count + t] = tokens.data[t * c_count + c];
    }
  }
  check(fm);
  return fm;
}

Tensor featuremap_as_tokens(const FeatureMap& fm) {
  Tensor out({fm.positions, fm.channels});
  for (std::size_t c = 0; c < fm.channels; ++c) {
    for (std::size_t s = 0; s < fm.positions; ++s) {
      out.data[s * fm.channels + c] = fm.at(c, s);
    }
  }
  return out;
}

Tensor gram_style(const FeatureMap& fm, GramNormalization norm) {
  check(fm);
  const std::size_t c_count = fm.channels;
  const double scale =
      norm == GramNormalization::kSpatialMean ? 1.0 / static_cast<double>(fm.positions) : 1.0;
  const auto order = canonical_positions(fm);
  std::vector<double> sorted(fm.data.size());
  for (std::size_t c = 0; c < c_count; ++c) {
    for (std::size_t s = 0; s < fm.positions; ++s) {
      sorted[c * fm.positions + s] = fm.at(c, order[s]);
    }
  }
  Tensor g({c_count, c_count});
  for (std::size_t a = 0; a < c_count; ++a) {
    const double* row_a = sorted.data() + a * fm.positions;
    for (std::size_t b = a; b < c_count; ++b) {
      const double* row_b = sorted.data() + b * fm.positions;
      double acc = 0.0;
      for (std::size_t s = 0; s < fm.positions; ++s) acc += row_a[s] * row_b[s];
      g.data[a * c_count + b] = acc * scale;
      g.data[b * c_count + a] = acc * scale;
    }
  }
  return g;
}

std::vector<double> meanstd_style(const FeatureMap& fm) {
  check(fm);
  const std::size_t c_count = fm.channels;
  const double n = static_cast<double>(fm.positions);
  const auto order = canonical_positions(fm);
  std::vector<double> out(2 * c_count);
  for (std::size_t c = 0; c < c_count; ++c) {
    double sum = 0.0;
    for (std::size_t s : order) sum += fm.at(c, s);
    const double mean = sum / n;
    double ss = 0.0;
    for (std::size_t s : order) {
      const double d = fm.at(c, s) - mean;
      ss += d * d;
    }
    out[c] = mean;
    out[c_count + c] = std::sqrt(ss / n);
  }
  return out;
}

StyleEmbedding style_embedding(const FeatureMap& fm, StyleKind kind,
                               GramNormalization norm) {
  StyleEmbedding e;
  e.kind = kind;
  e.layer_ids = {fm.layer_id};
  e.data = kind == StyleKind::kGatys ? gram_style(fm, norm).data : meanstd_style(fm);
  return e;
}

StyleEmbedding concat_style(std::span<const StyleEmbedding> embeddings) {
  if (embeddings.empty()) throw ShapeError("concat_style: empty list");
  StyleEmbedding out;
  out.kind = embeddings.front().kind;
  for (const auto& e : embeddings) {
    if (e.kind != out.kind) throw ShapeError("concat_style: mixed embedding kinds");
    out.data.insert(out.data.end(), e.data.begin(), e.data.end());
    out.layer_ids.insert(out.layer_ids.end(), e.layer_ids.begin(), e.layer_ids.end());
  }
  return out;
}

StyleEmbedding layer_stack_style(std::span<const FeatureMap> layers, StyleKind kind,
                                 GramNormalization norm) {
  std::vector<StyleEmbedding> per_layer;
  per_layer.reserve(layers.size());
  for (const auto& fm : layers) per_layer.push_back(style_embedding(fm, kind, norm));
  return concat_style(per_layer);
}

}  // namespace timbre
