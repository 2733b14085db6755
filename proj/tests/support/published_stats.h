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

#ifndef TIMBRE_TESTS_SUPPORT_PUBLISHED_STATS_H_
#define TIMBRE_TESTS_SUPPORT_PUBLISHED_STATS_H_

#include <array>
#include <cstddef>
#include <string_view>

namespace timbre::testing {

// Published per-dataset statistics of the 21-study timbre dissimilarity
// corpus: sample count, length mean/std (s) and integrated loudness
// mean/std (LUFS, 0.08 s gating blocks).
struct PublishedDataset {
  std::string_view name;  // manifest "name" produced by convert_corpus.py
  std::string_view label;
  std::size_t n;
  double length_mean;
  double length_std;
  double loudness_mean;
  double loudness_std;
};

inline constexpr std::array<PublishedDataset, 21> kPublishedCorpus = {{
    {"grey1977", "Grey 1977", 16, 0.27, 0.03, -14.61, 1.57},
    {"grey1978", "Grey & Gordon 1978", 16, 0.27, 0.03, -14.87, 1.76},
    {"iverson1993_whole", "Iverson Whole", 16, 3.19, 0.69, -16.62, 3.99},
    {"iverson1993_onset", "Iverson Onset", 16, 0.11, 0.01, -23.24, 9.10},
    {"iverson1993_remainder", "Iverson Remainder", 16, 3.10, 0.70, -16.71, 4.13},
    {"mcadams1995", "McAdams 1995", 18, 0.69, 0.19, -18.36, 4.05},
    {"lakatos2000_comb", "Lakatos Combined", 20, 1.50, 0.0, -24.08, 2.98},
    {"lakatos2000_harm", "Lakatos Harmonic", 17, 1.50, 0.0, -25.03, 2.36},
    {"lakatos2000_perc", "Lakatos Percussive", 18, 1.49, 0.05, -23.97, 3.83},
    {"barthet2010", "Barthet 2010", 15, 1.56, 0.04, -23.77, 1.13},
    {"patil2012_a3", "Patil A3", 11, 0.25, 0.0, -19.03, 0.85},
    {"patil2012_dx4", "Patil D4", 11, 0.25, 0.0, -19.17, 0.81},
    {"patil2012_gd4", "Patil G#4", 11, 0.25, 0.0, -18.97, 0.81},
    {"zacharakis2014_greek", "Zacharakis Greek", 24, 1.30, 0.0, -29.36, 3.84},
    {"zacharakis2014_english", "Zacharakis English", 24, 1.30, 0.0, -29.36, 3.84},
    {"siedenburg2016_e2set1", "Siedenburg Exp2A Set1", 14, 0.50, 0.0, -23.56, 3.15},
    {"siedenburg2016_e2set2", "Siedenburg Exp2A Set2", 14, 0.50, 0.0, -23.77, 1.90},
    {"siedenburg2016_e2set3", "Siedenburg Exp2A Set3", 14, 0.50, 0.0, -23.21, 2.37},
    {"siedenburg2016_e3", "Siedenburg Exp2B", 14, 0.50, 0.0, -23.21, 2.37},
    {"saitis2020_e2piano", "Saitis GEdissim", 14, 0.50, 0.0, -23.56, 3.15},
    {"vahidi2020", "Vahidi 2020", 15, 1.00, 0.0, -9.73, 3.09},
}};

inline constexpr std::size_t kPublishedSamples = 334;
inline constexpr std::size_t kPublishedRatings = 2614;

}  // namespace timbre::testing

#endif  // TIMBRE_TESTS_SUPPORT_PUBLISHED_STATS_H_
