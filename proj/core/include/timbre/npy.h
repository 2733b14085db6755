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

#ifndef TIMBRE_NPY_H_
#define TIMBRE_NPY_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "timbre/tensor.h"

namespace timbre {

// NPY interchange: little-endian float32, C order. Readers accept format
// versions 1.0-3.0; writers emit version 1.0 with the same header layout as
// numpy.save (64-byte aligned, spare room for growing the first axis).
Tensor decode_npy(const std::vector<std::uint8_t>& bytes, const std::string& source);
Tensor read_npy(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_npy(const Tensor& t);
// Writes to a temporary sibling and renames, so readers never observe a
// partially written file.
void write_npy(const std::filesystem::path& path, const Tensor& t);

// Atomic write of arbitrary bytes (temp file + rename).
void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes);

}  // namespace timbre

#endif  // TIMBRE_NPY_H_
