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

#ifndef TIMBRE_DISTANCES_H_
#define TIMBRE_DISTANCES_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace timbre {

// Distances over flattened representations. Every function accumulates in
// double and throws ShapeError when the operands differ in dimension or are
// empty.

double l2(std::span<const double> u, std::span<const double> v);
double l1(std::span<const double> u, std::span<const double> v);
double neg_dot(std::span<const double> u, std::span<const double> v);

// 1 - cos(u, v) in [0, 2]; std::nullopt when either operand is all zeros.
std::optional<double> cosine(std::span<const double> u, std::span<const double> v);

// arcosh(1 + 2 |u - v|^2 / ((1 - |u|^2)(1 - |v|^2))). Both points must lie
// strictly inside the unit ball; throws Error on a non-finite result.
double poincare(std::span<const double> u, std::span<const double> v);

inline constexpr double kBallEpsilon = 1e-5;

// Common factor that brings every vector of a set inside the ball of radius
// 1 - eps: (1 - eps) / max_norm when max_norm >= 1 - eps, else 1.
double ball_projection_scale(std::span<const double> norms, double eps = kBallEpsilon);

// Scales all vectors in place by one common factor (see above).
void ball_projection(std::vector<std::vector<double>>& batch, double eps = kBallEpsilon);

double norm(std::span<const double> v);

enum class DistanceKind { kL1, kL2, kCosine, kNegDot, kPoincare };

const char* distance_name(DistanceKind kind);
// Parses l1, l2, cosine, negdot, poincare. Throws InputError otherwise.
DistanceKind parse_distance(const std::string& name);

// Dispatch. std::nullopt marks an undefined pair (zero-vector cosine).
// Poincare operands must already be projected.
std::optional<double> distance(DistanceKind kind, std::span<const double> u,
                               std::span<const double> v);

}  // namespace timbre

#endif  // TIMBRE_DISTANCES_H_
