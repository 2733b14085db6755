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

#ifndef TIMBRE_REPORT_H_
#define TIMBRE_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timbre/evaluate.h"

namespace timbre {

// Rounds to `digits` significant decimal digits (printf %.*g semantics).
double round_significant(double value, int digits = 12);

// Nested report JSON: representation -> strategy -> distance -> metric ->
// {dataset: score | null, "__aggregate__", "__rows_evaluated__",
// "__rows_skipped__", ...}, plus a top-level "warnings" array. Keys are
// sorted and floats carry 12 significant digits, so identical reports
// serialise to identical bytes. Ends with a newline.
std::string report_json(const AlignmentReport& report);

// One row per leaf of the JSON tree:
// representation,strategy,distance,metric,key,value
std::string report_csv(const AlignmentReport& report);

struct AggregateScore {
  std::string representation;
  std::string strategy;
  std::string distance;
  std::string metric;
  std::optional<double> value;
};

// Reads the "__aggregate__" leaves back from report JSON, in key order.
// Throws InputError naming `source` on malformed input.
std::vector<AggregateScore> parse_report_aggregates(std::string_view json,
                                                    const std::string& source);

}  // namespace timbre

#endif  // TIMBRE_REPORT_H_
