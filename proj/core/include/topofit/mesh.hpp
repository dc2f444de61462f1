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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "topofit/types.hpp"

namespace topofit {

/// Fixed-topology triangle mesh. Faces are counter-clockwise when seen from
/// outside. Operations that change positions never touch `faces`.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t face_count() const { return faces.size(); }
  bool empty() const { return faces.empty(); }
};

/// Undirected edge with `a < b`.
struct Edge {
  int a = 0;
  int b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Throws if a face index is out of range or a face repeats a vertex.
void validate(const Mesh& mesh);

/// Unique undirected edges, sorted lexicographically.
std::vector<Edge> unique_edges(const Mesh& mesh);

/// Sorted one-ring neighbours of every vertex.
std::vector<std::vector<int>> vertex_neighbors(const Mesh& mesh);

/// True iff every undirected edge is shared by exactly two faces.
bool is_watertight(const Mesh& mesh);

/// Throws if some directed edge is used by two faces, i.e. neighbouring
/// faces disagree on orientation.
void check_consistent_winding(const Mesh& mesh);

double face_area(const Mesh& mesh, std::size_t face);
double surface_area(const Mesh& mesh);

/// Unit face normals from CCW winding. Throws on a zero-area face.
std::vector<Vec3> face_normals(const Mesh& mesh);

/// Area-weighted average of incident face normals, normalized. Throws on a
/// zero-area face or a vertex without incident faces.
std::vector<Vec3> vertex_normals(const Mesh& mesh);

/// Signed volume enclosed by the mesh (positive for outward winding).
double signed_volume(const Mesh& mesh);

/// FNV-1a hash of the vertex count and face list; identifies a topology
/// independently of vertex positions.
std::uint64_t topology_hash(const Mesh& mesh);

/// Per-vertex optimizable flag.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::size_t vertex_count, bool value = true)
      : flags_(vertex_count, value ? 1 : 0) {}
  explicit VertexMask(std::vector<std::uint8_t> flags) : flags_(std::move(flags)) {}

  std::size_t size() const { return flags_.size(); }
  bool operator[](std::size_t i) const { return flags_[i] != 0; }
  void set(std::size_t i, bool value) { flags_[i] = value ? 1 : 0; }
  std::size_t count() const;
  const std::vector<std::uint8_t>& flags() const { return flags_; }

  friend bool operator==(const VertexMask&, const VertexMask&) = default;

 private:
  std::vector<std::uint8_t> flags_;
};

}  // namespace topofit
