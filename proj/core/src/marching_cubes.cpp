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

#include "topofit/marching_cubes.hpp"

#include <unordered_map>

#include <fmt/core.h>

#include "mc_tables.hpp"
#include "topofit/parallel.hpp"

namespace topofit {

Mesh marching_cubes(const ImplicitField& field, GridResolution resolution, double iso) {
  return marching_cubes(field, resolution, iso, field.bounds());
}

Mesh marching_cubes(const ImplicitField& field, GridResolution resolution, double iso,
                    const Aabb& box) {
  if (!(iso > 0.0 && iso < 1.0)) throw Error(fmt::format("iso level {} must lie in (0, 1)", iso));
  for (int a = 0; a < 3; ++a) {
    if (resolution[a] < 2) throw Error("marching cubes resolution must be >= 2 per axis");
    if (!(box.max[a] > box.min[a])) throw Error("marching cubes box is empty");
  }
  const auto nx = static_cast<std::size_t>(resolution[0]);
  const auto ny = static_cast<std::size_t>(resolution[1]);
  const auto nz = static_cast<std::size_t>(resolution[2]);
  Vec3 h;
  for (int a = 0; a < 3; ++a) h[a] = box.extent()[a] / (resolution[a] - 1);
  auto node = [&](std::size_t i, std::size_t j, std::size_t k) {
    return Vec3(box.min.x() + static_cast<double>(i) * h.x(),
                box.min.y() + static_cast<double>(j) * h.y(),
                box.min.z() + static_cast<double>(k) * h.z());
  };
  auto node_index = [&](std::size_t i, std::size_t j, std::size_t k) {
    return i + nx * (j + ny * k);
  };

  std::vector<double> values(nx * ny * nz);
  parallel_for(nz, [&](std::size_t k) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) values[node_index(i, j, k)] = field.eval(node(i, j, k));
    }
  });

  Mesh mesh;
  std::unordered_map<std::size_t, int> edge_vertex;
  edge_vertex.reserve(nx * ny * 4);

  // Shared-vertex lookup keyed by (lower node, axis) of the grid edge.
  auto vertex_on_edge = [&](const std::size_t corner_node[8], const std::size_t corner_ijk[8][3],
                            int edge) {
    int ca = detail::kMcEdgeCorners[edge][0];
    int cb = detail::kMcEdgeCorners[edge][1];
    if (corner_node[cb] < corner_node[ca]) std::swap(ca, cb);
    int axis = 0;
    for (int a = 0; a < 3; ++a) {
      if (corner_ijk[ca][a] != corner_ijk[cb][a]) axis = a;
    }
    const std::size_t key = 3 * corner_node[ca] + static_cast<std::size_t>(axis);
    auto [it, inserted] = edge_vertex.try_emplace(key, 0);
    if (inserted) {
      const double va = values[corner_node[ca]];
      const double vb = values[corner_node[cb]];
      const double t = (iso - va) / (vb - va);
      const Vec3 pa = node(corner_ijk[ca][0], corner_ijk[ca][1], corner_ijk[ca][2]);
      const Vec3 pb = node(corner_ijk[cb][0], corner_ijk[cb][1], corner_ijk[cb][2]);
      it->second = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(pa + t * (pb - pa));
    }
    return it->second;
  };

  std::size_t corner_node[8];
  std::size_t corner_ijk[8][3];
  for (std::size_t k = 0; k + 1 < nz; ++k) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      for (std::size_t i = 0; i + 1 < nx; ++i) {
        int cube_case = 0;
        for (int c = 0; c < 8; ++c) {
          const auto* off = detail::kMcCornerOffset[c];
          corner_ijk[c][0] = i + static_cast<std::size_t>(off[0]);
          corner_ijk[c][1] = j + static_cast<std::size_t>(off[1]);
          corner_ijk[c][2] = k + static_cast<std::size_t>(off[2]);
          corner_node[c] = node_index(corner_ijk[c][0], corner_ijk[c][1], corner_ijk[c][2]);
          if (values[corner_node[c]] < iso) cube_case |= 1 << c;
        }
        if (detail::kMcEdgeTable[cube_case] == 0) continue;
        const signed char* tri = detail::kMcTriTable[cube_case];
        for (int t = 0; tri[t] != -1; t += 3) {
          const int a = vertex_on_edge(corner_node, corner_ijk, tri[t]);
          const int b = vertex_on_edge(corner_node, corner_ijk, tri[t + 1]);
          const int c = vertex_on_edge(corner_node, corner_ijk, tri[t + 2]);
          // The table winds triangles facing the below-iso side; occupancy
          // decreases outward, so the table order is already outward.
          mesh.faces.push_back({a, b, c});
        }
      }
    }
  }
  return mesh;
}

}  // namespace topofit
