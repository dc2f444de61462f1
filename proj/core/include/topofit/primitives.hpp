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

#include "topofit/mesh.hpp"

namespace topofit {

// Closed, outward-wound primitives centred at the origin.

/// Regular tetrahedron with vertices at distance `radius` from the origin.
Mesh tetrahedron(double radius = 1.0);
/// Axis-aligned cube with side `side`, 8 vertices and 12 faces.
Mesh cube(double side = 1.0);
Mesh octahedron(double radius = 1.0);
Mesh icosahedron(double radius = 1.0);

/// Icosahedron refined `level` times by midpoint subdivision, vertices
/// projected to the sphere. Vertex counts: 12, 42, 162, 642, 2562, 10242.
Mesh icosphere(int level, double radius = 1.0);

}  // namespace topofit
