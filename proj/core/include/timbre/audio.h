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

#ifndef TIMBRE_AUDIO_H_
#define TIMBRE_AUDIO_H_

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace timbre {

// Mono audio. Samples are nominally in [-1, 1]; float sources may exceed it.
struct Waveform {
  std::vector<double> samples;
  std::uint32_t sample_rate = 0;

  double duration() const {
    return sample_rate == 0 ? 0.0
                            : static_cast<double>(samples.size()) / sample_rate;
  }
  bool operator==(const Waveform&) const = default;
};

// Throws InputError unless the waveform has >= 1 finite sample and a positive
// sample rate.
void validate_waveform(const Waveform& w, const char* what = "waveform");

// RIFF/WAVE with PCM 8/16/24/32-bit or IEEE float32/float64 payloads,
// including WAVE_FORMAT_EXTENSIBLE. Channels are folded to mono by mean.
Waveform decode_wav(const std::filesystem::path& path);
Waveform decode_wav_bytes(const std::vector<std::uint8_t>& bytes,
                          const std::string& source = "<memory>");

enum class WavEncoding { kPcm16, kFloat32 };

// Writes a mono file. PCM16 clips to [-1, 1].
void write_wav(const std::filesystem::path& path, const Waveform& w,
               WavEncoding encoding = WavEncoding::kPcm16);
std::vector<std::uint8_t> encode_wav(const Waveform& w, WavEncoding encoding);
// Interleaves equally long channels into one file.
std::vector<std::uint8_t> encode_wav_channels(
    const std::vector<std::vector<double>>& channels, std::uint32_t sample_rate,
    WavEncoding encoding);

// Band-limited windowed-sinc resampling. Output length is
// round(len * target / source).
Waveform resample(const Waveform& w, std::uint32_t target_rate);

// Sentinel returned for a signal whose blocks are all gated out.
inline constexpr double kSilentLoudness = -std::numeric_limits<double>::infinity();

struct LoudnessOptions {
  double block_size = 0.08;  // seconds
  double overlap = 0.75;
  double absolute_gate = -70.0;  // LUFS
  double relative_gate = -10.0;  // LU
};

// Gated integrated loudness of a mono signal (K-weighting, block energies,
// absolute then relative gate). Throws InputError when the signal is shorter
// than one block. Returns kSilentLoudness when every block is gated out.
double integrated_loudness(const Waveform& w, const LoudnessOptions& options);
double integrated_loudness(const Waveform& w, double block_size = 0.08);

// K-weighting as two biquads (high shelf, then high pass) designed for `rate`.
struct Biquad {
  double b0, b1, b2, a1, a2;
};
struct KWeighting {
  Biquad shelf;
  Biquad highpass;
};
KWeighting k_weighting(std::uint32_t rate);

}  // namespace timbre

#endif  // TIMBRE_AUDIO_H_
