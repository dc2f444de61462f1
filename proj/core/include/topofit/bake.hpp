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

#include "topofit/grid_field.hpp"
#include "topofit/mesh.hpp"

namespace topofit {

/// Ground-truth occupancy of a watertight mesh on a node grid: 1 where the
/// node is inside, 0 elsewhere, optionally followed by one separable
/// [1/4, 1/2, 1/4] blur pass per axis. Throws for non-watertight meshes.
GridField bake_field(const Mesh& mesh, GridResolution resolution, const Aabb& box,
                     bool smooth = true);

}  // namespace topofit
