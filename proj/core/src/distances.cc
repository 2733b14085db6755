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

#include "timbre/distances.h"

#include <algorithm>
#include <cmath>

#include "timbre/error.h"

namespace timbre {

namespace {

void check_dims(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw ShapeError("distance operands differ in dimension (" + std::to_string(u.size()) +
                     " vs " + std::to_string(v.size()) + ")");
  }
  if (u.empty()) throw ShapeError("distance operands are empty");
}

double dot(std::span<const double> u, std::span<const double> v) {
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += u[k] * v[k];
  return acc;
}

}  // namespace

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double l2(std::span<const double> u, std::span<const double> v) {
  check_dims(u, v);
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double d = u[k] - v[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double l1(std::span<const double> u, std::span<const double> v) {
  check_dims(u, v);
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += std::abs(u[k] - v[k]);
  return acc;
}

double neg_dot(std::span<const double> u, std::span<const double> v) {
  check_dims(u, v);
  return -dot(u, v);
}

std::optional<double> cosine(std::span<const double> u, std::span<const double> v) {
  check_dims(u, v);
  const double uu = dot(u, u);
  const double vv = dot(v, v);
  if (uu == 0.0 || vv == 0.0) return std::nullopt;
  const double prod = uu * vv;
  const double denom = std::isfinite(prod) ? std::sqrt(prod) : std::sqrt(uu) * std::sqrt(vv);
  const double sim = std::clamp(dot(u, v) / denom, -1.0, 1.0);
  return 1.0 - sim;
}

double poincare(std::span<const double> u, std::span<const double> v) {
  check_dims(u, v);
  double diff2 = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double d = u[k] - v[k];
    diff2 += d * d;
  }
  const double denom = (1.0 - dot(u, u)) * (1.0 - dot(v, v));
  const double arg = 1.0 + 2.0 * diff2 / denom;
  const double d = std::acosh(arg);
  if (!(denom > 0.0) || !std::isfinite(d)) {
    throw Error("poincare: non-finite distance (operands not projected into the ball)");
  }
  return d;
}

double ball_projection_scale(std::span<const double> norms, double eps) {
  double max_norm = 0.0;
  for (double n : norms) max_norm = std::max(max_norm, n);
  if (max_norm >= 1.0 - eps) return (1.0 - eps) / max_norm;
  return 1.0;
}

void ball_projection(std::vector<std::vector<double>>& batch, double eps) {
  std::vector<double> norms;
  norms.reserve(batch.size());
  for (const auto& v : batch) norms.push_back(norm(v));
  const double s = ball_projection_scale(norms, eps);
  if (s == 1.0) return;
  for (auto& v : batch) {
    for (double& x : v) x *= s;
  }
}

const char* distance_name(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kL1: return "l1";
    case DistanceKind::kL2: return "l2";
    case DistanceKind::kCosine: return "cosine";
    case DistanceKind::kNegDot: return "negdot";
    case DistanceKind::kPoincare: return "poincare";
  }
  return "?";
}

DistanceKind parse_distance(const std::string& name) {
  if (name == "l1") return DistanceKind::kL1;
  if (name == "l2") return DistanceKind::kL2;
  if (name == "cosine") return DistanceKind::kCosine;
  if (name == "negdot") return DistanceKind::kNegDot;
  if (name == "poincare") return DistanceKind::kPoincare;
  throw InputError("--distances", name, "unknown distance function");
}

std::optional<double> distance(DistanceKind kind, std::span<const double> u,
                               std::span<const double> v) {
  switch (kind) {
    case DistanceKind::kL1: return l1(u, v);
    case DistanceKind::kL2: return l2(u, v);
    case DistanceKind::kCosine: return cosine(u, v);
    case DistanceKind::kNegDot: return neg_dot(u, v);
    case DistanceKind::kPoincare: return poincare(u, v);
  }
  return std::nullopt;
}

}  // namespace timbre
