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

#include "timbre/tensor.h"

#include <cmath>
#include <functional>
#include <numeric>
#include <utility>

#include "timbre/error.h"

namespace timbre {

std::size_t shape_product(std::span<const std::size_t> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

Tensor::Tensor(std::vector<std::size_t> s, std::vector<double> d)
    : shape(std::move(s)), data(std::move(d)) {
  if (shape_product(shape) != data.size()) {
    throw ShapeError("tensor data size does not match shape");
  }
}

Tensor::Tensor(std::vector<std::size_t> s)
    : shape(std::move(s)), data(shape_product(shape), 0.0) {}

void require_finite(const Tensor& t, const std::string& what) {
  for (double v : t.data) {
    if (!std::isfinite(v)) throw ShapeError(what + ": non-finite entry");
  }
}

std::size_t Representation::frames() const {
  if (!time_axis || parts.empty()) return 1;
  return parts.front().shape.at(*time_axis);
}

std::size_t Representation::flat_size() const {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.size();
  return n;
}

std::vector<double> Representation::flatten() const {
  std::vector<double> out;
  out.reserve(flat_size());
  for (const auto& p : parts) out.insert(out.end(), p.data.begin(), p.data.end());
  return out;
}

Representation make_representation(Tensor t, std::optional<std::size_t> time_axis,
                                   std::string source_id) {
  if (time_axis && *time_axis >= t.rank()) {
    throw ShapeError("time axis out of range for tensor rank");
  }
  Representation r;
  r.parts.push_back(std::move(t));
  r.time_axis = time_axis;
  r.source_id = std::move(source_id);
  return r;
}

}  // namespace timbre
