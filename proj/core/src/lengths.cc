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

#include "timbre/lengths.h"

#include <cmath>

#include "timbre/error.h"

namespace timbre {

LengthStrategy LengthStrategy::fixed_window(double seconds) {
  if (!(seconds > 0.0)) throw InputError("length", "window_seconds", "must be positive");
  return {LengthStrategyKind::kFixedWindow, seconds};
}

std::string LengthStrategy::report_key() const {
  return kind == LengthStrategyKind::kTimeAverage ? "avg" : "dynamic";
}

LengthStrategyKind parse_length_strategy(const std::string& name) {
  if (name == "avg") return LengthStrategyKind::kTimeAverage;
  if (name == "dynamic") return LengthStrategyKind::kDynamicPad;
  throw InputError("--length", name, "unknown length strategy (expected avg or dynamic)");
}

LengthStrategy resolve_strategy(const RepresentationTraits& traits,
                                LengthStrategyKind requested) {
  if (requested == LengthStrategyKind::kTimeAverage) {
    if (!traits.has_time_axis) {
      throw NotApplicableError(
          "time averaging refused: representation has a single time frame");
    }
    if (traits.shift_sensitive) {
      throw NotApplicableError(
          "time averaging refused: producer uses a fixed, non-sliding window");
    }
    return LengthStrategy::time_average();
  }
  if (traits.shift_sensitive) {
    if (!traits.window_seconds) {
      throw NotApplicableError("shift-sensitive representation without a window length");
    }
    return LengthStrategy::fixed_window(*traits.window_seconds);
  }
  if (requested == LengthStrategyKind::kFixedWindow) {
    throw NotApplicableError("fixed window applies only to shift-sensitive producers");
  }
  return LengthStrategy::dynamic_pad();
}

Representation time_average(const Representation& rep) {
  if (!rep.time_axis) {
    throw NotApplicableError("time_average: representation '" + rep.source_id +
                             "' has no time axis");
  }
  const std::size_t axis = *rep.time_axis;
  Representation out;
  out.source_id = rep.source_id;
  for (const Tensor& part : rep.parts) {
    if (axis >= part.rank()) throw ShapeError("time_average: time axis out of range");
    std::size_t outer = 1;
    for (std::size_t k = 0; k < axis; ++k) outer *= part.shape[k];
    const std::size_t frames = part.shape[axis];
    std::size_t inner = 1;
    for (std::size_t k = axis + 1; k < part.rank(); ++k) inner *= part.shape[k];
    if (frames == 0) throw ShapeError("time_average: empty time axis");

    std::vector<std::size_t> shape;
    for (std::size_t k = 0; k < part.rank(); ++k) {
      if (k != axis) shape.push_back(part.shape[k]);
    }
    Tensor avg(shape);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < inner; ++i) {
        double sum = 0.0;
        for (std::size_t t = 0; t < frames; ++t) {
          sum += part.data[(o * frames + t) * inner + i];
        }
        avg.data[o * inner + i] = sum / static_cast<double>(frames);
      }
    }
    out.parts.push_back(std::move(avg));
  }
  return out;
}

Waveform pad_right(const Waveform& w, std::size_t length) {
  Waveform out = w;
  if (out.samples.size() < length) out.samples.resize(length, 0.0);
  return out;
}

std::pair<Waveform, Waveform> pair_pad(const Waveform& a, const Waveform& b) {
  if (a.sample_rate != b.sample_rate) {
    throw InputError("pair_pad", "sample_rate",
                     "sample-rate mismatch (" + std::to_string(a.sample_rate) + " vs " +
                         std::to_string(b.sample_rate) + ")");
  }
  const std::size_t length = std::max(a.samples.size(), b.samples.size());
  return {pad_right(a, length), pad_right(b, length)};
}

Waveform fixed_window(const Waveform& w, double seconds) {
  if (!(seconds > 0.0)) throw InputError("fixed_window", "duration", "must be positive");
  const auto length = static_cast<std::size_t>(std::llround(seconds * w.sample_rate));
  Waveform out = w;
  out.samples.resize(length, 0.0);
  return out;
}

Representation pad_frames(const Representation& rep, std::size_t frames) {
  if (!rep.time_axis) return rep;
  const std::size_t axis = *rep.time_axis;
  Representation out;
  out.source_id = rep.source_id;
  out.time_axis = rep.time_axis;
  for (const Tensor& part : rep.parts) {
    const std::size_t have = part.shape.at(axis);
    if (have >= frames) {
      out.parts.push_back(part);
      continue;
    }
    std::size_t outer = 1;
    for (std::size_t k = 0; k < axis; ++k) outer *= part.shape[k];
    std::size_t inner = 1;
    for (std::size_t k = axis + 1; k < part.rank(); ++k) inner *= part.shape[k];
    std::vector<std::size_t> shape = part.shape;
    shape[axis] = frames;
    Tensor padded(shape);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t t = 0; t < have; ++t) {
        for (std::size_t i = 0; i < inner; ++i) {
          padded.data[(o * frames + t) * inner + i] = part.data[(o * have + t) * inner + i];
        }
      }
    }
    out.parts.push_back(std::move(padded));
  }
  return out;
}

}  // namespace timbre
