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

#ifndef TIMBRE_FEATURES_H_
#define TIMBRE_FEATURES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "timbre/audio.h"
#include "timbre/tensor.h"

namespace timbre {

enum class Window { kHann, kRectangular };

struct SpectrogramConfig {
  std::size_t fft_size = 2048;
  std::size_t hop = 512;
  Window window = Window::kHann;
  // Zero-pad fft_size / 2 samples on both sides so frame t is centred on
  // sample t * hop.
  bool center = true;
};

// Magnitude spectrogram, shape (fft_size / 2 + 1) x frames, time axis 1.
// Centred framing yields floor(len / hop) + 1 frames. Without centring a
// signal shorter than fft_size is zero-padded to a single frame.
Representation stft_magnitude(const Waveform& w, const SpectrogramConfig& cfg);

// Periodic window of length n.
std::vector<double> make_window(Window window, std::size_t n);

struct MfccConfig {
  std::size_t n_mfcc = 40;
  std::uint32_t sample_rate = 44100;
  std::size_t fft_size = 2048;
  std::size_t hop = 512;
  std::size_t n_mels = 128;
  double fmin = 0.0;
  double fmax = 0.0;  // 0 means Nyquist
  double log_floor = 1e-10;
};

// Slaney-style mel filterbank with area-normalised triangles, shape
// n_mels x (fft_size / 2 + 1).
Tensor mel_filterbank(std::uint32_t sample_rate, std::size_t fft_size,
                      std::size_t n_mels, double fmin, double fmax);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Power spectrogram -> mel -> 10 log10(max(x, floor)) -> orthonormal DCT-II,
// first n_mfcc coefficients. Shape n_mfcc x frames, time axis 1. The waveform
// must already be at cfg.sample_rate.
Representation mfcc(const Waveform& w, const MfccConfig& cfg = {});

inline constexpr std::array<std::size_t, 6> kMultiScaleFftSizes = {4096, 2048, 1024,
                                                                   512,  256,  128};

// Linear-magnitude Hann spectrograms at each fft size with hop fft / 4,
// centred. One part per scale in the given order, time axis 1.
Representation multi_scale_spectrogram(
    const Waveform& w, std::span<const std::size_t> fft_sizes = kMultiScaleFftSizes);

}  // namespace timbre

#endif  // TIMBRE_FEATURES_H_
