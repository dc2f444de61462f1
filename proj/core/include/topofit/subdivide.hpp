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

#include <optional>
#include <vector>

#include "topofit/mesh.hpp"

namespace topofit {

/// Where a vertex of a subdivided mesh came from: either an original vertex
/// (`parent_edge` empty, `original` set) or the midpoint of `parent_edge`.
struct VertexOrigin {
  int original = -1;
  std::optional<Edge> parent_edge;
};

struct Subdivision {
  Mesh mesh;
  std::vector<VertexOrigin> origins;  // one per output vertex
};

/// Splits every triangle into four by inserting one vertex per unique edge at
/// its midpoint. Original vertices keep their indices; midpoints follow in
/// order of first appearance while scanning faces.
Subdivision subdivide_midpoint(const Mesh& mesh);

/// Propagates an optimizable mask: a midpoint is optimizable iff both edge
/// endpoints are.
VertexMask propagate_mask(const Subdivision& sub, const VertexMask& mask);

}  // namespace topofit
