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

#include <vector>

#include "topofit/mesh.hpp"

namespace topofit {

/// Exact closest point on triangle (a, b, c) to p (Voronoi-region walk).
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

struct ClosestHit {
  double distance = 0.0;
  Vec3 point = Vec3::Zero();
  std::size_t face = 0;
};

/// Bounding-volume hierarchy over the faces of a mesh answering exact
/// point-to-surface queries. Immutable after construction.
class TriangleBvh {
 public:
  explicit TriangleBvh(const Mesh& mesh);

  ClosestHit closest(const Vec3& p) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t face_count() const { return tris_.size(); }

 private:
  struct Node {
    Aabb box;
    int left = -1;   // child index, or -1 for a leaf
    int right = -1;
    int first = 0;   // leaf range into order_
    int count = 0;
  };
  struct Tri {
    Vec3 a, b, c;
  };

  int build(int first, int count, std::vector<Vec3>& centroids);

  std::vector<Tri> tris_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace topofit
