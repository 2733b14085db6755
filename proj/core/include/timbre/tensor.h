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

#ifndef TIMBRE_TENSOR_H_
#define TIMBRE_TENSOR_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace timbre {

// Dense row-major tensor of doubles.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);
  explicit Tensor(std::vector<std::size_t> shape);

  std::size_t rank() const { return shape.size(); }
  std::size_t size() const { return data.size(); }

  std::span<const double> values() const { return data; }

  bool operator==(const Tensor&) const = default;
};

std::size_t shape_product(std::span<const std::size_t> shape);

// Throws ShapeError unless every entry is finite.
void require_finite(const Tensor& t, const std::string& what);

// A real-valued representation of one audio sample. Most representations are
// a single tensor; multi-scale spectrograms and layer stacks carry one part per
// scale or layer. Flattening concatenates the parts in order. When
// `time_axis` is set it names the same axis in every part.
struct Representation {
  std::vector<Tensor> parts;
  std::optional<std::size_t> time_axis;
  std::string source_id;

  // Length of the time axis (taken from the first part).
  std::size_t frames() const;
  std::size_t flat_size() const;
  std::vector<double> flatten() const;
};

Representation make_representation(Tensor t, std::optional<std::size_t> time_axis,
                                   std::string source_id);

}  // namespace timbre

#endif  // TIMBRE_TENSOR_H_
