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

#include "fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <new>

namespace timbre::internal {

namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

// Plans outlive every RealFft; they are never destroyed.
fftw_plan plan_for(std::size_t n, double* in, std::complex<double>* out) {
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard lock(planner_mutex());
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in,
                                     reinterpret_cast<fftw_complex*>(out),
                                     FFTW_ESTIMATE);
  if (p == nullptr) throw std::bad_alloc();
  plans.emplace(n, p);
  return p;
}

}  // namespace

RealFft::RealFft(std::size_t size) : size_(size) {
  in_ = static_cast<double*>(fftw_malloc(sizeof(double) * size_));
  out_ = static_cast<std::complex<double>*>(
      fftw_malloc(sizeof(std::complex<double>) * (size_ / 2 + 1)));
  if (in_ == nullptr || out_ == nullptr) {
    fftw_free(in_);
    fftw_free(out_);
    throw std::bad_alloc();
  }
  plan_ = plan_for(size_, in_, out_);
}

RealFft::~RealFft() {
  fftw_free(in_);
  fftw_free(out_);
}

std::span<const std::complex<double>> RealFft::execute() {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_), in_,
                       reinterpret_cast<fftw_complex*>(out_));
  return {out_, bins()};
}

}  // namespace timbre::internal
