// Copyright 2026 The TopoFit Authors.
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

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "topofit/mesh.hpp"

namespace topofit::testutil {

/// Central difference of `f` along coordinate `i` of `x`.
inline double central_difference(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> x, std::size_t i, double h) {
  const double x0 = x[i];
  x[i] = x0 + h;
  const double up = f(x);
  x[i] = x0 - h;
  const double down = f(x);
  return (up - down) / (2.0 * h);
}

/// |a - b| / max(|a|, |b|, floor). The floor keeps near-zero derivatives
/// from inflating the ratio.
inline double relative_error(double a, double b, double floor = 1e-6) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  return v.normalized();
}

inline Vec3 random_in_box(std::mt19937_64& rng, const Vec3& lo, const Vec3& hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {lo.x() + u(rng) * (hi.x() - lo.x()), lo.y() + u(rng) * (hi.y() - lo.y()),
          lo.z() + u(rng) * (hi.z() - lo.z())};
}

/// Moves every vertex by a random offset of up to `amount` per axis.
inline Mesh jitter(Mesh mesh, double amount, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amount, amount);
  for (Vec3& v : mesh.vertices) v += Vec3(u(rng), u(rng), u(rng));
  return mesh;
}

/// Ray-parity inside test: counts crossings of a ray from p along `dir`
/// with every triangle (Moller-Trumbore).
inline bool ray_parity_inside(const Mesh& mesh, const Vec3& p, const Vec3& dir) {
  int crossings = 0;
  for (const Face& f : mesh.faces) {
    const Vec3& a = mesh.vertices[static_cast<std::size_t>(f[0])];
    const Vec3& b = mesh.vertices[static_cast<std::size_t>(f[1])];
    const Vec3& c = mesh.vertices[static_cast<std::size_t>(f[2])];
    const Vec3 e1 = b - a, e2 = c - a;
    const Vec3 q = dir.cross(e2);
    const double det = e1.dot(q);
    if (std::abs(det) < 1e-14) continue;
    const double inv = 1.0 / det;
    const Vec3 s = p - a;
    const double u = s.dot(q) * inv;
    if (u < 0.0 || u > 1.0) continue;
    const Vec3 r = s.cross(e1);
    const double v = dir.dot(r) * inv;
    if (v < 0.0 || u + v > 1.0) continue;
    if (e2.dot(r) * inv > 0.0) ++crossings;
  }
  return crossings % 2 == 1;
}

/// Majority vote of ray parity over three fixed, generic directions.
inline bool ray_parity_oracle(const Mesh& mesh, const Vec3& p) {
  static const Vec3 dirs[3] = {Vec3(0.5773, 0.5774, 0.5775).normalized(),
                               Vec3(-0.3121, 0.8213, 0.4776).normalized(),
                               Vec3(0.7071, -0.1234, -0.6963).normalized()};
  int votes = 0;
  for (const Vec3& d : dirs) votes += ray_parity_inside(mesh, p, d) ? 1 : 0;
  return votes >= 2;
}

inline double segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (a + t * ab - p).norm();
}

/// Triangle distance by projection onto the supporting plane, falling back
/// to the three edges when the foot lies outside.
inline double triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a).normalized();
  const Vec3 foot = p - (p - a).dot(n) * n;
  const double w0 = (c - b).cross(foot - b).dot(n);
  const double w1 = (a - c).cross(foot - c).dot(n);
  const double w2 = (b - a).cross(foot - a).dot(n);
  if (w0 >= 0.0 && w1 >= 0.0 && w2 >= 0.0) return std::abs((p - a).dot(n));
  return std::min({segment_distance(p, a, b), segment_distance(p, b, c), segment_distance(p, c, a)});
}

/// Distance from p to a mesh by brute force over all faces.
inline double brute_force_distance(const Mesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Face& f : mesh.faces) {
    best = std::min(best, triangle_distance(p, mesh.vertices[static_cast<std::size_t>(f[0])],
                                            mesh.vertices[static_cast<std::size_t>(f[1])],
                                            mesh.vertices[static_cast<std::size_t>(f[2])]));
  }
  return best;
}

}  // namespace topofit::testutil
