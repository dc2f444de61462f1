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

#include "topofit/mesh.hpp"

#include <algorithm>
#include <map>

#include <fmt/core.h>

namespace topofit {

void validate(const Mesh& mesh) {
  const auto n = static_cast<long long>(mesh.vertices.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& t = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= n) {
        throw Error(fmt::format("face {} references vertex {} outside [0, {})", f,
                                t[k], n));
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw Error(fmt::format("face {} is degenerate ({}, {}, {})", f, t[0], t[1], t[2]));
    }
  }
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (!mesh.vertices[i].allFinite()) {
      throw Error(fmt::format("vertex {} has a non-finite coordinate", i));
    }
  }
}

std::vector<Edge> unique_edges(const Mesh& mesh) {
  std::vector<Edge> edges;
  edges.reserve(mesh.faces.size() * 3);
  for (const Face& t : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<std::vector<int>> vertex_neighbors(const Mesh& mesh) {
  std::vector<std::vector<int>> nbrs(mesh.vertices.size());
  for (const Edge& e : unique_edges(mesh)) {
    nbrs[e.a].push_back(e.b);
    nbrs[e.b].push_back(e.a);
  }
  for (auto& ring : nbrs) std::sort(ring.begin(), ring.end());
  return nbrs;
}

bool is_watertight(const Mesh& mesh) {
  if (mesh.faces.empty()) return false;
  std::vector<Edge> edges;
  edges.reserve(mesh.faces.size() * 3);
  for (const Face& t : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && edges[j] == edges[i]) ++j;
    if (j - i != 2) return false;
    i = j;
  }
  return true;
}

void check_consistent_winding(const Mesh& mesh) {
  std::vector<std::pair<long long, std::size_t>> directed;
  directed.reserve(mesh.faces.size() * 3);
  const auto n = static_cast<long long>(mesh.vertices.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& t = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      directed.emplace_back(static_cast<long long>(t[k]) * n + t[(k + 1) % 3], f);
    }
  }
  std::sort(directed.begin(), directed.end());
  for (std::size_t i = 1; i < directed.size(); ++i) {
    if (directed[i].first == directed[i - 1].first) {
      throw Error(fmt::format("faces {} and {} have inconsistent winding",
                              directed[i - 1].second, directed[i].second));
    }
  }
}

namespace {

Vec3 face_cross(const Mesh& mesh, const Face& t) {
  const Vec3& a = mesh.vertices[t[0]];
  const Vec3& b = mesh.vertices[t[1]];
  const Vec3& c = mesh.vertices[t[2]];
  return (b - a).cross(c - a);
}

}  // namespace

double face_area(const Mesh& mesh, std::size_t face) {
  return 0.5 * face_cross(mesh, mesh.faces[face]).norm();
}

double surface_area(const Mesh& mesh) {
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) total += face_area(mesh, f);
  return total;
}

std::vector<Vec3> face_normals(const Mesh& mesh) {
  std::vector<Vec3> normals(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Vec3 c = face_cross(mesh, mesh.faces[f]);
    const double len = c.norm();
    if (!(len > 0.0)) throw Error(fmt::format("face {} has zero area", f));
    normals[f] = c / len;
  }
  return normals;
}

std::vector<Vec3> vertex_normals(const Mesh& mesh) {
  std::vector<Vec3> normals(mesh.vertices.size(), Vec3::Zero());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& t = mesh.faces[f];
    // |cross| = 2 * area, so the raw cross product is already area-weighted.
    const Vec3 c = face_cross(mesh, t);
    if (!(c.norm() > 0.0)) throw Error(fmt::format("face {} has zero area", f));
    for (int k = 0; k < 3; ++k) normals[t[k]] += c;
  }
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const double len = normals[i].norm();
    if (!(len > 0.0)) {
      throw Error(fmt::format("vertex {} has no incident face area", i));
    }
    normals[i] /= len;
  }
  return normals;
}

double signed_volume(const Mesh& mesh) {
  double vol = 0.0;
  for (const Face& t : mesh.faces) {
    vol += mesh.vertices[t[0]].dot(mesh.vertices[t[1]].cross(mesh.vertices[t[2]]));
  }
  return vol / 6.0;
}

std::uint64_t topology_hash(const Mesh& mesh) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t value, int bytes) {
    for (int b = 0; b < bytes; ++b) {
      h ^= (value >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(mesh.vertex_count(), 8);
  for (const Face& f : mesh.faces) {
    for (int v : f) mix(static_cast<std::uint32_t>(v), 4);
  }
  return h;
}

std::size_t VertexMask::count() const {
  return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), 1));
}

}  // namespace topofit
