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

#include "topofit/camera.hpp"
#include "topofit/mesh.hpp"

namespace topofit {

/// Square window on the image plane mapped onto `size` x `size` pixels.
/// Pixel (x, y) covers u in [u0 + x * step, u0 + (x + 1) * step), likewise v.
struct ImageWindow {
  double u0 = 0.0;
  double v0 = 0.0;
  double step = 1.0;
  int size = 0;

  /// Smallest square window containing the projections of every vertex of
  /// `meshes`, padded by `margin` of its side.
  static ImageWindow fit(const std::vector<const Mesh*>& meshes, const Camera& camera, int size,
                         double margin = 0.05);
};

/// Per-pixel camera-space normals, components mapped from [-1, 1] to
/// [0, 1]. `covered[p]` is 1 where some face is visible.
struct NormalImage {
  int size = 0;
  std::vector<Vec3> normal;
  std::vector<std::uint8_t> covered;
};

/// Z-buffer rasterization of interpolated vertex normals sampled at pixel
/// centres; the face with the smallest camera depth wins.
NormalImage render_normals(const Mesh& mesh, const Camera& camera, const ImageWindow& window);

}  // namespace topofit
