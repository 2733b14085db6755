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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "timbre/audio.h"
#include "timbre/error.h"

namespace timbre {

void validate_waveform(const Waveform& w, const char* what) {
  if (w.sample_rate == 0) throw InputError(what, "sample_rate", "must be positive");
  if (w.samples.empty()) throw InputError(what, "samples", "empty waveform");
  for (double s : w.samples) {
    if (!std::isfinite(s)) throw InputError(what, "samples", "non-finite sample");
  }
}

namespace {

// Kaiser-windowed sinc, tabulated over [0, kZeroCrossings] zero crossings.
constexpr int kZeroCrossings = 32;
constexpr int kOversample = 1024;
constexpr double kKaiserBeta = 9.0;
constexpr double kRolloff = 0.97;

const std::vector<double>& sinc_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kZeroCrossings * kOversample + 2, 0.0);
    const double norm = std::cyl_bessel_i(0.0, kKaiserBeta);
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
      const double x = static_cast<double>(k) / kOversample;
      const double r = x / kZeroCrossings;
      const double window =
          std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(std::max(0.0, 1.0 - r * r))) /
          norm;
      const double sinc =
          x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
      t[k] = sinc * window;
    }
    return t;
  }();
  return table;
}

double kernel(double x) {
  const auto& t = sinc_table();
  const double pos = std::abs(x) * kOversample;
  const auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= t.size()) return 0.0;
  const double frac = pos - static_cast<double>(k);
  return t[k] + frac * (t[k + 1] - t[k]);
}

}  // namespace

Waveform resample(const Waveform& w, std::uint32_t target_rate) {
  if (target_rate == 0) throw InputError("resample", "target_rate", "must be positive");
  if (target_rate == w.sample_rate) return w;
  validate_waveform(w, "resample");

  const double ratio = static_cast<double>(target_rate) / w.sample_rate;
  const double cutoff = std::min(1.0, ratio) * kRolloff;
  const double half_width = kZeroCrossings / cutoff;
  const auto in_len = static_cast<std::ptrdiff_t>(w.samples.size());
  const auto out_len =
      static_cast<std::size_t>(std::llround(static_cast<double>(in_len) * ratio));

  Waveform out;
  out.sample_rate = target_rate;
  out.samples.assign(out_len, 0.0);
  for (std::size_t n = 0; n < out_len; ++n) {
    const double t = static_cast<double>(n) / ratio;
    const auto lo = std::max<std::ptrdiff_t>(
        0, static_cast<std::ptrdiff_t>(std::ceil(t - half_width)));
    const auto hi = std::min<std::ptrdiff_t>(
        in_len - 1, static_cast<std::ptrdiff_t>(std::floor(t + half_width)));
    double acc = 0.0;
    for (std::ptrdiff_t k = lo; k <= hi; ++k) {
      acc += w.samples[static_cast<std::size_t>(k)] *
             kernel((t - static_cast<double>(k)) * cutoff);
    }
    out.samples[n] = acc * cutoff;
  }
  return out;
}

}  // namespace timbre
