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

#include <cmath>
#include <numbers>
#include <vector>

#include "timbre/audio.h"
#include "timbre/error.h"

namespace timbre {

// High shelf and high pass re-derived for any rate from the analog prototypes
// that reproduce the published 48 kHz coefficients.
KWeighting k_weighting(std::uint32_t rate) {
  const double fs = static_cast<double>(rate);
  KWeighting kw{};
  {
    const double f0 = 1681.974450955533;
    const double gain_db = 3.999843853973347;
    const double q = 0.7071752369554196;
    const double k = std::tan(std::numbers::pi * f0 / fs);
    const double vh = std::pow(10.0, gain_db / 20.0);
    const double vb = std::pow(vh, 0.4996667741545416);
    const double a0 = 1.0 + k / q + k * k;
    kw.shelf.b0 = (vh + vb * k / q + k * k) / a0;
    kw.shelf.b1 = 2.0 * (k * k - vh) / a0;
    kw.shelf.b2 = (vh - vb * k / q + k * k) / a0;
    kw.shelf.a1 = 2.0 * (k * k - 1.0) / a0;
    kw.shelf.a2 = (1.0 - k / q + k * k) / a0;
  }
  {
    const double f0 = 38.13547087602444;
    const double q = 0.5003270373238773;
    const double k = std::tan(std::numbers::pi * f0 / fs);
    const double a0 = 1.0 + k / q + k * k;
    kw.highpass.b0 = 1.0;
    kw.highpass.b1 = -2.0;
    kw.highpass.b2 = 1.0;
    kw.highpass.a1 = 2.0 * (k * k - 1.0) / a0;
    kw.highpass.a2 = (1.0 - k / q + k * k) / a0;
  }
  return kw;
}

namespace {

void apply_biquad(const Biquad& f, std::vector<double>& x) {
  double z1 = 0.0, z2 = 0.0;  // transposed direct form II
  for (double& s : x) {
    const double y = f.b0 * s + z1;
    z1 = f.b1 * s - f.a1 * y + z2;
    z2 = f.b2 * s - f.a2 * y;
    s = y;
  }
}

double block_loudness(double mean_square) {
  return -0.691 + 10.0 * std::log10(mean_square);
}

}  // namespace

double integrated_loudness(const Waveform& w, const LoudnessOptions& opt) {
  validate_waveform(w, "integrated_loudness");
  if (!(opt.block_size > 0.0) || !(opt.overlap >= 0.0 && opt.overlap < 1.0)) {
    throw InputError("integrated_loudness", "options", "invalid block configuration");
  }
  const double rate = w.sample_rate;
  const double block_samples = opt.block_size * rate;
  if (static_cast<double>(w.samples.size()) < block_samples) {
    throw InputError("integrated_loudness", "samples",
                     "waveform shorter than one gating block");
  }

  std::vector<double> y = w.samples;
  const KWeighting kw = k_weighting(w.sample_rate);
  apply_biquad(kw.shelf, y);
  apply_biquad(kw.highpass, y);

  // Block framing: starts at multiples of block_size * (1 - overlap); the block
  // count rounds half to even and the final block is clipped to the signal.
  const double step = 1.0 - opt.overlap;
  const double duration = static_cast<double>(y.size()) / rate;
  const auto n_blocks = static_cast<std::size_t>(
      std::nearbyint((duration - opt.block_size) / (opt.block_size * step)) + 1);

  std::vector<double> energy(n_blocks, 0.0);
  for (std::size_t j = 0; j < n_blocks; ++j) {
    const double jd = static_cast<double>(j);
    const auto lo = static_cast<std::size_t>(opt.block_size * (jd * step) * rate);
    auto hi = static_cast<std::size_t>(opt.block_size * (jd * step + 1.0) * rate);
    if (hi > y.size()) hi = y.size();
    double sum = 0.0;
    for (std::size_t n = lo; n < hi; ++n) sum += y[n] * y[n];
    energy[j] = sum / block_samples;
  }

  double abs_sum = 0.0;
  std::size_t abs_count = 0;
  for (double z : energy) {
    if (block_loudness(z) >= opt.absolute_gate) {
      abs_sum += z;
      ++abs_count;
    }
  }
  if (abs_count == 0) return kSilentLoudness;

  const double relative =
      block_loudness(abs_sum / static_cast<double>(abs_count)) + opt.relative_gate;
  double sum = 0.0;
  std::size_t count = 0;
  for (double z : energy) {
    const double l = block_loudness(z);
    if (l > relative && l > opt.absolute_gate) {
      sum += z;
      ++count;
    }
  }
  if (count == 0) return kSilentLoudness;
  return block_loudness(sum / static_cast<double>(count));
}

double integrated_loudness(const Waveform& w, double block_size) {
  LoudnessOptions opt;
  opt.block_size = block_size;
  return integrated_loudness(w, opt);
}

}  // namespace timbre
