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

#include "timbre/features.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.h"
#include "timbre/error.h"

namespace timbre {

std::vector<double> make_window(Window window, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (window == Window::kHann) {
    for (std::size_t k = 0; k < n; ++k) {
      w[k] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                  static_cast<double>(n));
    }
  }
  return w;
}

namespace {

// Squared-magnitude or magnitude spectrogram, bins x frames.
Tensor spectrogram(const Waveform& w, const SpectrogramConfig& cfg, bool power) {
  validate_waveform(w, "stft");
  if (cfg.hop == 0 || cfg.fft_size < cfg.hop || cfg.fft_size < 2) {
    throw InputError("stft", "config", "require hop >= 1 and fft_size >= hop");
  }
  const std::size_t n_fft = cfg.fft_size;
  const std::size_t len = w.samples.size();
  const std::size_t pad = cfg.center ? n_fft / 2 : 0;
  const std::size_t frames =
      cfg.center ? len / cfg.hop + 1 : (len >= n_fft ? 1 + (len - n_fft) / cfg.hop : 1);
  const std::size_t bins = n_fft / 2 + 1;
  const std::vector<double> window = make_window(cfg.window, n_fft);

  Tensor out({bins, frames});
  internal::RealFft fft(n_fft);
  auto in = fft.input();
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * cfg.hop;  // in padded coordinates
    for (std::size_t k = 0; k < n_fft; ++k) {
      const std::size_t p = start + k;
      const double x = (p >= pad && p - pad < len) ? w.samples[p - pad] : 0.0;
      in[k] = x * window[k];
    }
    const auto spec = fft.execute();
    for (std::size_t b = 0; b < bins; ++b) {
      const double m2 = std::norm(spec[b]);
      out.data[b * frames + t] = power ? m2 : std::sqrt(m2);
    }
  }
  return out;
}

}  // namespace

Representation stft_magnitude(const Waveform& w, const SpectrogramConfig& cfg) {
  return make_representation(spectrogram(w, cfg, false), 1, "stft");
}

double hz_to_mel(double hz) {
  constexpr double f_sp = 200.0 / 3.0;
  constexpr double min_log_hz = 1000.0;
  constexpr double min_log_mel = min_log_hz / f_sp;
  const double logstep = std::log(6.4) / 27.0;
  if (hz < min_log_hz) return hz / f_sp;
  return min_log_mel + std::log(hz / min_log_hz) / logstep;
}

double mel_to_hz(double mel) {
  constexpr double f_sp = 200.0 / 3.0;
  constexpr double min_log_hz = 1000.0;
  constexpr double min_log_mel = min_log_hz / f_sp;
  const double logstep = std::log(6.4) / 27.0;
  if (mel < min_log_mel) return mel * f_sp;
  return min_log_hz * std::exp(logstep * (mel - min_log_mel));
}

Tensor mel_filterbank(std::uint32_t sample_rate, std::size_t fft_size,
                      std::size_t n_mels, double fmin, double fmax) {
  if (fmax <= 0.0) fmax = sample_rate / 2.0;
  if (n_mels == 0 || !(fmax > fmin)) {
    throw InputError("mel_filterbank", "config", "invalid band layout");
  }
  const std::size_t bins = fft_size / 2 + 1;
  std::vector<double> fft_freqs(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    fft_freqs[b] = static_cast<double>(b) * sample_rate / static_cast<double>(fft_size);
  }
  const double mel_lo = hz_to_mel(fmin);
  const double mel_hi = hz_to_mel(fmax);
  std::vector<double> edges(n_mels + 2);
  for (std::size_t m = 0; m < edges.size(); ++m) {
    edges[m] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(m) /
                                      static_cast<double>(n_mels + 1));
  }

  Tensor fb({n_mels, bins});
  for (std::size_t m = 0; m < n_mels; ++m) {
    const double lower_width = edges[m + 1] - edges[m];
    const double upper_width = edges[m + 2] - edges[m + 1];
    const double enorm = 2.0 / (edges[m + 2] - edges[m]);
    for (std::size_t b = 0; b < bins; ++b) {
      const double rise = (fft_freqs[b] - edges[m]) / lower_width;
      const double fall = (edges[m + 2] - fft_freqs[b]) / upper_width;
      fb.data[m * bins + b] = std::max(0.0, std::min(rise, fall)) * enorm;
    }
  }
  return fb;
}

Representation mfcc(const Waveform& w, const MfccConfig& cfg) {
  if (cfg.n_mfcc == 0 || cfg.n_mfcc > cfg.n_mels) {
    throw InputError("mfcc", "n_mfcc", "must be in [1, n_mels]");
  }
  if (w.sample_rate != cfg.sample_rate) {
    throw InputError("mfcc", "sample_rate",
                     "waveform at " + std::to_string(w.sample_rate) +
                         " Hz, expected " + std::to_string(cfg.sample_rate));
  }
  SpectrogramConfig sc;
  sc.fft_size = cfg.fft_size;
  sc.hop = cfg.hop;
  const Tensor power = spectrogram(w, sc, true);
  const std::size_t bins = power.shape[0];
  const std::size_t frames = power.shape[1];
  const Tensor fb = mel_filterbank(cfg.sample_rate, cfg.fft_size, cfg.n_mels,
                                   cfg.fmin, cfg.fmax);
  const std::size_t n_mels = cfg.n_mels;

  std::vector<double> log_mel(n_mels * frames);
  for (std::size_t m = 0; m < n_mels; ++m) {
    for (std::size_t t = 0; t < frames; ++t) {
      double acc = 0.0;
      for (std::size_t b = 0; b < bins; ++b) {
        acc += fb.data[m * bins + b] * power.data[b * frames + t];
      }
      log_mel[m * frames + t] = 10.0 * std::log10(std::max(acc, cfg.log_floor));
    }
  }

  // Orthonormal DCT-II along the mel axis.
  Tensor out({cfg.n_mfcc, frames});
  const double n = static_cast<double>(n_mels);
  for (std::size_t k = 0; k < cfg.n_mfcc; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    std::vector<double> basis(n_mels);
    for (std::size_t m = 0; m < n_mels; ++m) {
      basis[m] = scale * std::cos(std::numbers::pi * static_cast<double>(k) *
                                  (2.0 * static_cast<double>(m) + 1.0) / (2.0 * n));
    }
    for (std::size_t t = 0; t < frames; ++t) {
      double acc = 0.0;
      for (std::size_t m = 0; m < n_mels; ++m) acc += basis[m] * log_mel[m * frames + t];
      out.data[k * frames + t] = acc;
    }
  }
  return make_representation(std::move(out), 1, "mfcc");
}

Representation multi_scale_spectrogram(const Waveform& w,
                                       std::span<const std::size_t> fft_sizes) {
  if (fft_sizes.empty()) throw InputError("mss", "fft_sizes", "empty");
  Representation r;
  r.time_axis = 1;
  r.source_id = "mss";
  for (std::size_t n_fft : fft_sizes) {
    SpectrogramConfig sc;
    sc.fft_size = n_fft;
    sc.hop = std::max<std::size_t>(1, n_fft / 4);
    r.parts.push_back(spectrogram(w, sc, false));
  }
  return r;
}

}  // namespace timbre
