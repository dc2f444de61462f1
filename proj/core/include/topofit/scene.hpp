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

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "topofit/camera.hpp"
#include "topofit/field.hpp"
#include "topofit/grid_field.hpp"
#include "topofit/mesh.hpp"

namespace topofit {

enum class SceneKind { Sphere, Ellipsoid, BumpySphere, CapsuleChain };

std::string to_string(SceneKind kind);
/// Throws listing the known kinds.
SceneKind scene_kind_from_string(const std::string& name);

/// How the scene's grid field is produced from the subject.
enum class FieldSource {
  Analytic,  ///< smooth occupancy of the signed distance, sampled at nodes
  Baked,     ///< inside test of the target mesh at nodes, blurred once
};

struct SceneParams {
  SceneKind kind = SceneKind::Sphere;
  double radius = 0.5;
  Vec3 semi_axes{0.5, 0.5, 0.55};
  double amplitude = 0.03;  ///< bumpy sphere displacement
  int degree = 8;           ///< bumpy sphere band limit
  int template_level = 4;   ///< icosphere level of the template mesh
  int target_level = 5;     ///< icosphere level of the reference mesh
  GridResolution grid{128, 128, 128};
  double half_extent = 0.8;  ///< field box is [-h, h]^3
  double width = kDefaultOccupancyWidth;
  FieldSource source = FieldSource::Analytic;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Desk-scale stand-in for a captured subject: reference surface, a template
/// to register, an occupancy grid, and the camera it is aligned with.
struct SyntheticScene {
  SceneParams params;
  std::shared_ptr<const SignedDistance> sdf;
  Mesh target;          ///< watertight reference surface
  Mesh template_mesh;   ///< initial guess to be registered
  GridField field;
  Camera camera;

  /// Continuous occupancy of the subject over the field box.
  SdfOccupancyField occupancy() const;
};

SyntheticScene generate_scene(const SceneParams& params);

/// Template meshes deformed by smooth radial bumps, for autoencoder tests.
struct BumpDatasetConfig {
  std::size_t count = 200;
  int level = 3;
  double radius = 0.5;
  double amplitude = 0.08;    ///< bump heights drawn from [-a, a]
  double bump_width = 0.6;    ///< angular std of each bump, radians
  std::uint64_t seed = 0;
};

/// The undeformed template of the dataset.
Mesh bump_template(const BumpDatasetConfig& config);
std::vector<Mesh> make_bump_dataset(const BumpDatasetConfig& config);

}  // namespace topofit
