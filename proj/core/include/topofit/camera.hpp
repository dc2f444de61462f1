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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "topofit/types.hpp"

namespace topofit {

enum class Projection { Orthogonal, Perspective };

/// Rigid world-to-camera transform X_c = R X + t followed by a projection to
/// image coordinates (u, v) and camera depth Z = X_c.z. The camera looks
/// along +z.
struct Camera {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  Projection mode = Projection::Orthogonal;
  Eigen::Vector2d focal{1.0, 1.0};
  Eigen::Vector2d principal{0.0, 0.0};

  static Camera identity(Projection mode = Projection::Orthogonal);

  /// Throws unless the rotation is orthonormal with determinant +1 (1e-9)
  /// and perspective focal lengths are nonzero.
  void validate() const;

  Vec3 to_camera(const Vec3& world) const { return rotation * world + translation; }
  Vec3 to_world(const Vec3& cam) const { return rotation.transpose() * (cam - translation); }

  /// World-space unit direction of the camera +z axis, i.e. the inverse
  /// rotation applied to a pure depth offset (0, 0, 1).
  Vec3 depth_direction() const { return rotation.row(2).transpose(); }

  /// (u, v, Z). Perspective projection throws when Z <= 0.
  Vec3 project(const Vec3& world) const;
  /// Non-throwing variant; empty for perspective points with Z <= 0.
  std::optional<Vec3> try_project(const Vec3& world) const;
  /// Inverse of project for a given (u, v, Z).
  Vec3 unproject(const Vec3& uvz) const;

  /// d(u, v, Z) / dX evaluated at a world point (rows: u, v, Z).
  Mat3 projection_jacobian(const Vec3& world) const;
};

void write_camera(std::ostream& out, const Camera& camera);
void write_camera(const std::filesystem::path& path, const Camera& camera);
Camera read_camera(std::istream& in, const std::string& source_name = "<stream>");
Camera read_camera(const std::filesystem::path& path);

std::string to_string(Projection mode);

}  // namespace topofit
