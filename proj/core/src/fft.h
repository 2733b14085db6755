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

#ifndef TIMBRE_SRC_FFT_H_
#define TIMBRE_SRC_FFT_H_

#include <complex>
#include <cstddef>
#include <span>

namespace timbre::internal {

// Real-to-complex forward DFT of a fixed size, backed by FFTW. Plans are
// created once per size under a global lock; instances own aligned scratch
// buffers and must not be shared between threads.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }
  std::size_t bins() const { return size_ / 2 + 1; }

  // Input buffer of size() samples; fill it, then call execute().
  std::span<double> input() { return {in_, size_}; }
  // Unnormalized spectrum X[k] = sum_n x[n] e^{-2 pi i k n / N}, k < bins().
  std::span<const std::complex<double>> execute();

 private:
  std::size_t size_;
  double* in_;
  std::complex<double>* out_;
  void* plan_;
};

}  // namespace timbre::internal

#endif  // TIMBRE_SRC_FFT_H_
