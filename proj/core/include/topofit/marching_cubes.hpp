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

#include "topofit/field.hpp"
#include "topofit/grid_field.hpp"
#include "topofit/mesh.hpp"

namespace topofit {

/// Extracts the `iso` level set of `field` sampled on a `resolution` node grid
/// over `box` (defaults to field.bounds()). Vertices are placed by linear
/// interpolation along sign-change edges and shared between neighbouring
/// cells; faces are wound so normals point toward decreasing occupancy.
/// Ambiguous configurations follow the case table as-is (no asymptotic
/// decider). An empty level set yields an empty mesh.
Mesh marching_cubes(const ImplicitField& field, GridResolution resolution, double iso);
Mesh marching_cubes(const ImplicitField& field, GridResolution resolution, double iso,
                    const Aabb& box);

}  // namespace topofit
