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

#include "topofit/subdivide.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/core.h>

namespace topofit {

Subdivision subdivide_midpoint(const Mesh& mesh) {
  validate(mesh);
  Subdivision out;
  out.mesh.vertices = mesh.vertices;
  out.origins.resize(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    out.origins[i].original = static_cast<int>(i);
  }

  const auto n = static_cast<long long>(mesh.vertices.size());
  std::unordered_map<long long, int> midpoint_of;
  midpoint_of.reserve(mesh.faces.size() * 2);
  auto midpoint = [&](int a, int b) {
    const Edge e{std::min(a, b), std::max(a, b)};
    const long long key = static_cast<long long>(e.a) * n + e.b;
    auto [it, inserted] = midpoint_of.try_emplace(key, 0);
    if (inserted) {
      it->second = static_cast<int>(out.mesh.vertices.size());
      out.mesh.vertices.push_back(0.5 * (mesh.vertices[e.a] + mesh.vertices[e.b]));
      out.origins.push_back({-1, e});
    }
    return it->second;
  };

  out.mesh.faces.reserve(mesh.faces.size() * 4);
  for (const Face& t : mesh.faces) {
    const int ab = midpoint(t[0], t[1]);
    const int bc = midpoint(t[1], t[2]);
    const int ca = midpoint(t[2], t[0]);
    out.mesh.faces.push_back({t[0], ab, ca});
    out.mesh.faces.push_back({ab, t[1], bc});
    out.mesh.faces.push_back({ca, bc, t[2]});
    out.mesh.faces.push_back({ab, bc, ca});
  }
  return out;
}

VertexMask propagate_mask(const Subdivision& sub, const VertexMask& mask) {
  const auto originals = static_cast<std::size_t>(
      std::count_if(sub.origins.begin(), sub.origins.end(),
                    [](const VertexOrigin& o) { return !o.parent_edge; }));
  if (mask.size() != originals) {
    throw Error(fmt::format("mask has {} entries but the coarse mesh has {} vertices",
                            mask.size(), originals));
  }
  VertexMask out(sub.origins.size(), false);
  for (std::size_t i = 0; i < sub.origins.size(); ++i) {
    const VertexOrigin& o = sub.origins[i];
    if (o.parent_edge) {
      out.set(i, mask[static_cast<std::size_t>(o.parent_edge->a)] &&
                     mask[static_cast<std::size_t>(o.parent_edge->b)]);
    } else {
      out.set(i, mask[static_cast<std::size_t>(o.original)]);
    }
  }
  return out;
}

}  // namespace topofit
