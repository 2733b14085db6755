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

#ifndef TIMBRE_PARALLEL_H_
#define TIMBRE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace timbre {

// Thread count from TIMBRE_ALIGN_THREADS, else `fallback`, else hardware
// concurrency. Always >= 1.
std::size_t resolve_thread_count(std::size_t fallback = 0);

// Calls fn(i) for i in [0, n) on up to `threads` workers. Work is claimed
// dynamically, so callers must write results into per-index slots. The first
// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace timbre

#endif  // TIMBRE_PARALLEL_H_
