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

// Helper driven by check_interchange.py.
//
//   npy_tool copy <in.npy> <out.npy>   read, then re-encode
//   npy_tool ramp <out.npy> d0 [d1 ...]  write values 0.5 * k - 3 in C order
//   npy_tool manifest <manifest.json>  load every entry, print one line each

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "timbre/embeddings.h"
#include "timbre/npy.h"

namespace {

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string s;
  for (std::size_t k = 0; k < shape.size(); ++k) s += (k ? "x" : "") + std::to_string(shape[k]);
  return s.empty() ? "scalar" : s;
}

int run(int argc, char** argv) {
  if (argc < 3) return 2;
  const std::string cmd = argv[1];
  if (cmd == "copy" && argc == 4) {
    timbre::write_npy(argv[3], timbre::read_npy(argv[2]));
    return 0;
  }
  if (cmd == "ramp" && argc >= 3) {
    std::vector<std::size_t> shape;
    for (int i = 3; i < argc; ++i) shape.push_back(std::strtoul(argv[i], nullptr, 10));
    timbre::Tensor t(shape);
    for (std::size_t k = 0; k < t.data.size(); ++k) t.data[k] = 0.5 * static_cast<double>(k) - 3.0;
    timbre::write_npy(argv[2], t);
    return 0;
  }
  if (cmd == "manifest" && argc == 3) {
    const auto manifest = timbre::load_embedding_manifest(argv[2]);
    for (const auto& e : manifest.entries) {
      const auto rep = timbre::load_embedding(e, manifest.root);
      double sum = 0.0;
      for (double v : rep.flatten()) sum += v;
      std::printf("%s %s %s %s %.6f\n", e.audio.c_str(), e.source_id.c_str(),
                  shape_string(rep.parts.at(0).shape).c_str(),
                  rep.time_axis ? std::to_string(*rep.time_axis).c_str() : "none", sum);
    }
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
