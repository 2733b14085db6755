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

#ifndef TIMBRE_LENGTHS_H_
#define TIMBRE_LENGTHS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "timbre/audio.h"
#include "timbre/tensor.h"

namespace timbre {

enum class LengthStrategyKind { kTimeAverage, kDynamicPad, kFixedWindow };

struct LengthStrategy {
  LengthStrategyKind kind = LengthStrategyKind::kDynamicPad;
  double window_seconds = 0.0;  // FixedWindow only, > 0

  static LengthStrategy time_average() { return {LengthStrategyKind::kTimeAverage, 0.0}; }
  static LengthStrategy dynamic_pad() { return {LengthStrategyKind::kDynamicPad, 0.0}; }
  static LengthStrategy fixed_window(double seconds);

  // Report key: "avg" for TimeAverage, "dynamic" for both padding variants.
  std::string report_key() const;

  bool operator==(const LengthStrategy&) const = default;
};

// Parses "avg" or "dynamic". Throws InputError otherwise.
LengthStrategyKind parse_length_strategy(const std::string& name);

// What the engine knows about a representation when choosing a strategy.
struct RepresentationTraits {
  bool has_time_axis = true;
  // Producer cannot slide its window; audio is padded or truncated to
  // `window_seconds` instead.
  bool shift_sensitive = false;
  std::optional<double> window_seconds;
};

// Maps a requested strategy onto what applies to `traits`:
//  - TimeAverage needs a time axis and a shift-tolerant producer; otherwise
//    NotApplicableError is thrown (single-frame representations carry nothing
//    to average).
//  - DynamicPad becomes FixedWindow for shift-sensitive producers.
LengthStrategy resolve_strategy(const RepresentationTraits& traits,
                                LengthStrategyKind requested);

// Mean over the time axis; the axis is removed. Throws NotApplicableError when
// the representation has no time axis.
Representation time_average(const Representation& rep);

// Right zero-pads the shorter waveform to the longer length. Throws
// InputError on a sample-rate mismatch.
std::pair<Waveform, Waveform> pair_pad(const Waveform& a, const Waveform& b);

// Right zero-pad to `length` samples; longer inputs are returned unchanged.
Waveform pad_right(const Waveform& w, std::size_t length);

// Exactly round(seconds * rate) samples: right zero-pad or right-truncate, so
// the onset is always kept.
Waveform fixed_window(const Waveform& w, double seconds);

// Zero-pads every part along the time axis to `frames` frames. Used for
// externally computed framed embeddings, where audio cannot be re-padded.
Representation pad_frames(const Representation& rep, std::size_t frames);

}  // namespace timbre

#endif  // TIMBRE_LENGTHS_H_
