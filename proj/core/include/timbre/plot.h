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

#ifndef TIMBRE_PLOT_H_
#define TIMBRE_PLOT_H_

#include <string>
#include <vector>

#include "timbre/report.h"

namespace timbre {

// Static SVG: one panel per metric, representations along the x axis, one
// bar per (strategy, distance) series. Missing aggregates leave a gap.
std::string render_svg(const std::vector<AggregateScore>& scores);

}  // namespace timbre

#endif  // TIMBRE_PLOT_H_
