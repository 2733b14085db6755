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
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "timbre/audio.h"
#include "timbre/error.h"

namespace timbre {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>((v >> s) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

double decode_sample(const std::uint8_t* p, std::uint16_t format, std::uint16_t bits) {
  if (format == kFormatFloat) {
    if (bits == 32) {
      const std::uint32_t raw = read_u32(p);
      float f;
      std::memcpy(&f, &raw, sizeof f);
      return f;
    }
    std::uint64_t raw = static_cast<std::uint64_t>(read_u32(p)) |
                        (static_cast<std::uint64_t>(read_u32(p + 4)) << 32);
    double d;
    std::memcpy(&d, &raw, sizeof d);
    return d;
  }
  switch (bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16:
      return static_cast<std::int16_t>(read_u16(p)) / 32768.0;
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v |= ~0xFFFFFF;
      return v / 8388608.0;
    }
    default:
      return static_cast<std::int32_t>(read_u32(p)) / 2147483648.0;
  }
}

}  // namespace

Waveform decode_wav_bytes(const std::vector<std::uint8_t>& bytes,
                          const std::string& source) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw InputError(source, "", "not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0, block_align = 0;
  std::uint32_t rate = 0;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size()) {
        throw InputError(source, "fmt", "truncated format chunk");
      }
      const std::uint8_t* f = bytes.data() + body;
      format = read_u16(f);
      channels = read_u16(f + 2);
      rate = read_u32(f + 4);
      block_align = read_u16(f + 12);
      bits = read_u16(f + 14);
      if (format == kFormatExtensible) {
        if (size < 40) throw InputError(source, "fmt", "truncated extensible format");
        format = read_u16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + size > bytes.size()) {
        throw InputError(source, "data", "truncated file");
      }
      data = bytes.data() + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1);
  }

  if (!have_fmt) throw InputError(source, "fmt", "missing format chunk");
  if (data == nullptr) throw InputError(source, "data", "missing data chunk");
  const bool pcm_ok = format == kFormatPcm &&
                      (bits == 8 || bits == 16 || bits == 24 || bits == 32);
  const bool float_ok = format == kFormatFloat && (bits == 32 || bits == 64);
  if (!pcm_ok && !float_ok) {
    throw InputError(source, "fmt",
                     "unsupported codec (format " + std::to_string(format) +
                         ", " + std::to_string(bits) + " bits)");
  }
  if (channels == 0 || rate == 0) throw InputError(source, "fmt", "invalid header");
  const std::size_t bytes_per_sample = bits / 8;
  if (block_align != channels * bytes_per_sample) {
    throw InputError(source, "fmt", "inconsistent block alignment");
  }

  const std::size_t frames = data_size / block_align;
  if (frames == 0) throw InputError(source, "data", "no samples");

  Waveform w;
  w.sample_rate = rate;
  w.samples.resize(frames);
  for (std::size_t n = 0; n < frames; ++n) {
    const std::uint8_t* frame = data + n * block_align;
    double sum = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      sum += decode_sample(frame + c * bytes_per_sample, format, bits);
    }
    w.samples[n] = sum / channels;
  }
  validate_waveform(w, source.c_str());
  return w;
}

Waveform decode_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "", "cannot open file");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_wav_bytes(bytes, path.string());
}

std::vector<std::uint8_t> encode_wav_channels(
    const std::vector<std::vector<double>>& channel_data, std::uint32_t sample_rate,
    WavEncoding encoding) {
  if (channel_data.empty()) throw ShapeError("encode_wav: no channels");
  const std::size_t frames = channel_data.front().size();
  for (const auto& c : channel_data) {
    if (c.size() != frames) throw ShapeError("encode_wav: ragged channels");
  }
  const auto channels = static_cast<std::uint16_t>(channel_data.size());
  const std::uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  const std::uint16_t format = encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat;
  const std::uint16_t block_align = static_cast<std::uint16_t>(channels * bits / 8);
  const auto data_size = static_cast<std::uint32_t>(frames * block_align);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, format);
  put_u16(out, channels);
  put_u32(out, sample_rate);
  put_u32(out, sample_rate * block_align);
  put_u16(out, block_align);
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_size);
  for (std::size_t n = 0; n < frames; ++n) {
    for (std::uint16_t c = 0; c < channels; ++c) {
      const double s = channel_data[c][n];
      if (encoding == WavEncoding::kPcm16) {
        const double clipped = std::clamp(s, -1.0, 1.0);
        const auto v = static_cast<std::int16_t>(
            std::lround(std::clamp(clipped * 32768.0, -32768.0, 32767.0)));
        put_u16(out, static_cast<std::uint16_t>(v));
      } else {
        const auto f = static_cast<float>(s);
        std::uint32_t raw;
        std::memcpy(&raw, &f, sizeof raw);
        put_u32(out, raw);
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_wav(const Waveform& w, WavEncoding encoding) {
  return encode_wav_channels({w.samples}, w.sample_rate, encoding);
}

void write_wav(const std::filesystem::path& path, const Waveform& w,
               WavEncoding encoding) {
  const auto bytes = encode_wav(w, encoding);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string(), "", "cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError(path.string(), "", "write failed");
}

}  // namespace timbre
