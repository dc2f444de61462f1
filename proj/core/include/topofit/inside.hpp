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
#include <vector>

#include "topofit/grid_field.hpp"
#include "topofit/mesh.hpp"

namespace topofit {

/// Inside/outside classification against a closed mesh. Construction checks
/// that the mesh is watertight; the tester is read-only afterwards and can be
/// shared between threads.
class InsideTester {
 public:
  explicit InsideTester(Mesh mesh);

  /// Generalized winding number: sum of signed solid angles / 4 pi. About 1
  /// inside an outward-wound closed surface and 0 outside.
  double winding_number(const Vec3& p) const;

  /// True iff the winding number exceeds 0.5.
  bool contains(const Vec3& p) const { return winding_number(p) > 0.5; }

  /// Batch classification of every node of a regular grid (x fastest) by
  /// crossing parity along x-parallel scanlines. Edge and vertex hits are
  /// resolved by symbolic perturbation of the scanline, so every crossing of
  /// a watertight surface is counted exactly once.
  std::vector<std::uint8_t> classify_grid(GridResolution resolution, const Aabb& box) const;

  const Mesh& mesh() const { return mesh_; }

 private:
  Mesh mesh_;
};

/// Convenience wrapper building a tester for one query.
bool point_inside(const Mesh& mesh, const Vec3& p);

}  // namespace topofit
