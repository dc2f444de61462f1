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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace topofit {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Face = std::array<int, 3>;

/// Base class for every error raised by the library. Messages name the
/// offending entity (vertex/face index, file and line, iteration).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Axis-aligned box. `min` and `max` are inclusive corners.
struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  bool contains(const Vec3& p) const {
    return p.x() >= min.x() && p.y() >= min.y() && p.z() >= min.z() &&
           p.x() <= max.x() && p.y() <= max.y() && p.z() <= max.z();
  }
  Vec3 extent() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
  bool empty() const {
    return !(min.x() <= max.x() && min.y() <= max.y() && min.z() <= max.z());
  }

  /// Grows the box by `fraction` of its extent on every side.
  Aabb expanded(double fraction) const {
    const Vec3 pad = fraction * extent();
    return {min - pad, max + pad};
  }

  static Aabb of(const std::vector<Vec3>& points);
};

inline Aabb Aabb::of(const std::vector<Vec3>& points) {
  if (points.empty()) return {};
  Aabb box{points.front(), points.front()};
  for (const Vec3& p : points) {
    box.min = box.min.cwiseMin(p);
    box.max = box.max.cwiseMax(p);
  }
  return box;
}

}  // namespace topofit
