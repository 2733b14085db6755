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

#include "timbre/npy.h"

#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "timbre/error.h"

namespace timbre {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[] = "\x93NUMPY";
constexpr std::size_t kMagicLen = 6;
constexpr std::size_t kAlign = 64;
constexpr std::size_t kGrowthAxisMaxDigits = 21;

std::string shape_repr(const std::vector<std::size_t>& shape) {
  std::string s = "(";
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k > 0) s += ", ";
    s += std::to_string(shape[k]);
  }
  if (shape.size() == 1) s += ",";
  return s + ")";
}

std::vector<std::size_t> parse_shape(const std::string& text, const std::string& source) {
  std::vector<std::size_t> shape;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    if (end == pos) throw InputError(source, "shape", "malformed header");
    shape.push_back(std::stoull(text.substr(pos, end - pos)));
    pos = end;
  }
  return shape;
}

}  // namespace

Tensor decode_npy(const std::vector<std::uint8_t>& bytes, const std::string& source) {
  if (bytes.size() < 10 || std::memcmp(bytes.data(), kMagic, kMagicLen) != 0) {
    throw InputError(source, "magic", "not an NPY file");
  }
  const int major = bytes[6];
  std::size_t header_len = 0;
  std::size_t offset = 0;
  if (major == 1) {
    header_len = bytes[8] | (bytes[9] << 8);
    offset = 10;
  } else if (major == 2 || major == 3) {
    if (bytes.size() < 12) throw InputError(source, "header", "truncated header");
    header_len = static_cast<std::size_t>(bytes[8]) | (bytes[9] << 8) |
                 (bytes[10] << 16) | (static_cast<std::size_t>(bytes[11]) << 24);
    offset = 12;
  } else {
    throw InputError(source, "version", "unsupported NPY version");
  }
  if (offset + header_len > bytes.size()) {
    throw InputError(source, "header", "truncated header");
  }
  const std::string header(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                           bytes.begin() + static_cast<std::ptrdiff_t>(offset + header_len));

  static const std::regex descr_re(R"('descr'\s*:\s*'([^']*)')");
  static const std::regex order_re(R"('fortran_order'\s*:\s*(True|False))");
  static const std::regex shape_re(R"('shape'\s*:\s*\(([^)]*)\))");
  std::smatch m;
  if (!std::regex_search(header, m, descr_re)) {
    throw InputError(source, "descr", "malformed header");
  }
  if (m[1] != "<f4") {
    throw InputError(source, "descr", "dtype " + m[1].str() + " is not <f4");
  }
  if (!std::regex_search(header, m, order_re)) {
    throw InputError(source, "fortran_order", "malformed header");
  }
  if (m[1] == "True") throw InputError(source, "fortran_order", "Fortran order unsupported");
  if (!std::regex_search(header, m, shape_re)) {
    throw InputError(source, "shape", "malformed header");
  }
  std::vector<std::size_t> shape = parse_shape(m[1].str(), source);

  const std::size_t count = shape_product(shape);
  const std::size_t data_offset = offset + header_len;
  if (bytes.size() - data_offset != count * 4) {
    throw InputError(source, "data", "payload size does not match shape");
  }
  std::vector<double> data(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint8_t* p = bytes.data() + data_offset + 4 * k;
    const std::uint32_t raw = static_cast<std::uint32_t>(p[0]) | (p[1] << 8) |
                              (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    float f;
    std::memcpy(&f, &raw, sizeof f);
    data[k] = f;
  }
  return Tensor(std::move(shape), std::move(data));
}

Tensor read_npy(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "", "cannot open file");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_npy(bytes, path.string());
}

std::vector<std::uint8_t> encode_npy(const Tensor& t) {
  std::string header = "{'descr': '<f4', 'fortran_order': False, 'shape': " +
                       shape_repr(t.shape) + ", }";
  if (!t.shape.empty()) {
    const std::size_t digits = std::to_string(t.shape.front()).size();
    header.append(kGrowthAxisMaxDigits - std::min(digits, kGrowthAxisMaxDigits), ' ');
  }
  const std::size_t unpadded = kMagicLen + 2 + 2 + header.size() + 1;
  header.append(kAlign - unpadded % kAlign, ' ');
  header.push_back('\n');

  std::vector<std::uint8_t> out(kMagic, kMagic + kMagicLen);
  out.push_back(1);
  out.push_back(0);
  out.push_back(static_cast<std::uint8_t>(header.size() & 0xFF));
  out.push_back(static_cast<std::uint8_t>(header.size() >> 8));
  out.insert(out.end(), header.begin(), header.end());
  out.reserve(out.size() + 4 * t.data.size());
  for (double v : t.data) {
    const auto f = static_cast<float>(v);
    std::uint32_t raw;
    std::memcpy(&raw, &f, sizeof raw);
    for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>(raw >> s));
  }
  return out;
}

void write_file_atomic(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  static std::atomic<unsigned long> counter{0};
  std::ostringstream suffix;
  suffix << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
         << counter.fetch_add(1);
  fs::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InputError(path.string(), "", "cannot open for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InputError(path.string(), "", "write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError(path.string(), "", "rename failed: " + ec.message());
  }
}

void write_npy(const fs::path& path, const Tensor& t) {
  write_file_atomic(path, encode_npy(t));
}

}  // namespace timbre
