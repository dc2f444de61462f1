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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "topofit/camera.hpp"
#include "topofit/field.hpp"

namespace topofit {

using GridResolution = std::array<int, 3>;

/// Dense occupancy samples on the nodes of a regular grid spanning `box`
/// (node (i, j, k) sits at box.min + (i, j, k) * spacing). Values are stored
/// as float32, x fastest, then y, then z, and evaluated by trilinear
/// interpolation.
class GridField final : public ImplicitField {
 public:
  /// Validates resolution >= 2 per axis, value count, and values in [0, 1].
  GridField(GridResolution resolution, Aabb box, std::vector<float> values);

  /// Samples `field` at every node; parallel over z-slabs, deterministic.
  static GridField sample(const ImplicitField& field, GridResolution resolution, Aabb box);

  double eval(const Vec3& x) const override;
  /// Gradient of the trilinear interpolant. On the upper box faces the last
  /// interior cell is used, giving the one-sided interior derivative.
  FieldSample eval_grad(const Vec3& x) const override;
  Aabb bounds() const override { return box_; }

  const GridResolution& resolution() const { return resolution_; }
  const std::vector<float>& values() const { return values_; }
  Vec3 spacing() const { return spacing_; }
  Vec3 node(int i, int j, int k) const;
  float at(int i, int j, int k) const {
    return values_[index(i, j, k)];
  }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(resolution_[0]) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(resolution_[1]) * static_cast<std::size_t>(k));
  }

 private:
  GridResolution resolution_;
  Aabb box_;
  Vec3 spacing_;
  std::vector<float> values_;
};

/// Binary grid format: magic "TPFGRID1", then little-endian 3 x uint32
/// resolution, 6 x float64 box (min xyz, max xyz), nx*ny*nz float32 values.
void write_grid(std::ostream& out, const GridField& grid);
void write_grid(const std::filesystem::path& path, const GridField& grid);
GridField read_grid(std::istream& in, const std::string& source_name = "<stream>");
GridField read_grid(const std::filesystem::path& path);

/// Occupancy parameterized by image location and depth: a grid indexed by
/// (u, v, Z) = project(X). Evaluating at X is exactly evaluating the grid at
/// camera.project(X); points behind a perspective camera are outside.
class PixelAlignedField final : public ImplicitField {
 public:
  PixelAlignedField(Camera camera, GridField grid);

  double eval(const Vec3& x) const override;
  FieldSample eval_grad(const Vec3& x) const override;
  /// World-space box enclosing the unprojected grid corners.
  Aabb bounds() const override;

  const Camera& camera() const { return camera_; }
  const GridField& grid() const { return grid_; }

 private:
  Camera camera_;
  GridField grid_;
};

}  // namespace topofit
