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

#include "topofit/closest_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace topofit {

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double denom = d1 - d3;
    return denom != 0.0 ? Vec3(a + (d1 / denom) * ab) : a;
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double denom = d2 - d6;
    return denom != 0.0 ? Vec3(a + (d2 / denom) * ac) : a;
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double denom = (d4 - d3) + (d5 - d6);
    return denom != 0.0 ? Vec3(b + ((d4 - d3) / denom) * (c - b)) : b;
  }

  const double sum = va + vb + vc;
  if (sum == 0.0) return a;  // degenerate triangle, all edge tests failed
  const double denom = 1.0 / sum;
  return a + ab * (vb * denom) + ac * (vc * denom);
}

namespace {

double box_distance2(const Aabb& box, const Vec3& p) {
  const Vec3 d = (box.min - p).cwiseMax(p - box.max).cwiseMax(Vec3::Zero());
  return d.squaredNorm();
}

constexpr int kLeafSize = 4;

}  // namespace

TriangleBvh::TriangleBvh(const Mesh& mesh) {
  validate(mesh);
  if (mesh.faces.empty()) throw Error("cannot build a BVH over an empty mesh");
  tris_.reserve(mesh.faces.size());
  std::vector<Vec3> centroids;
  centroids.reserve(mesh.faces.size());
  for (const Face& f : mesh.faces) {
    tris_.push_back({mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]});
    centroids.push_back((tris_.back().a + tris_.back().b + tris_.back().c) / 3.0);
  }
  order_.resize(tris_.size());
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * tris_.size() / kLeafSize + 1);
  build(0, static_cast<int>(tris_.size()), centroids);
}

int TriangleBvh::build(int first, int count, std::vector<Vec3>& centroids) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Aabb box{Vec3::Constant(std::numeric_limits<double>::infinity()),
           Vec3::Constant(-std::numeric_limits<double>::infinity())};
  Aabb cbox = box;
  for (int i = first; i < first + count; ++i) {
    const Tri& t = tris_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])];
    box.min = box.min.cwiseMin(t.a).cwiseMin(t.b).cwiseMin(t.c);
    box.max = box.max.cwiseMax(t.a).cwiseMax(t.b).cwiseMax(t.c);
    const Vec3& c = centroids[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])];
    cbox.min = cbox.min.cwiseMin(c);
    cbox.max = cbox.max.cwiseMax(c);
  }
  nodes_[static_cast<std::size_t>(index)].box = box;
  if (count <= kLeafSize) {
    nodes_[static_cast<std::size_t>(index)].first = first;
    nodes_[static_cast<std::size_t>(index)].count = count;
    return index;
  }
  int axis = 0;
  cbox.extent().maxCoeff(&axis);
  const int mid = first + count / 2;
  std::nth_element(order_.begin() + first, order_.begin() + mid, order_.begin() + first + count,
                   [&](int x, int y) {
                     const double cx = centroids[static_cast<std::size_t>(x)][axis];
                     const double cy = centroids[static_cast<std::size_t>(y)][axis];
                     return cx < cy || (cx == cy && x < y);
                   });
  const int left = build(first, mid - first, centroids);
  const int right = build(mid, first + count - mid, centroids);
  nodes_[static_cast<std::size_t>(index)].left = left;
  nodes_[static_cast<std::size_t>(index)].right = right;
  return index;
}

ClosestHit TriangleBvh::closest(const Vec3& p) const {
  ClosestHit best;
  double best_d2 = std::numeric_limits<double>::infinity();
  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[static_cast<std::size_t>(stack[--top])];
    if (box_distance2(node.box, p) >= best_d2) continue;
    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int f = order_[static_cast<std::size_t>(i)];
        const Tri& t = tris_[static_cast<std::size_t>(f)];
        const Vec3 q = closest_point_on_triangle(p, t.a, t.b, t.c);
        const double d2 = (q - p).squaredNorm();
        if (d2 < best_d2 || (d2 == best_d2 && static_cast<std::size_t>(f) < best.face)) {
          best_d2 = d2;
          best.point = q;
          best.face = static_cast<std::size_t>(f);
        }
      }
      continue;
    }
    const double dl = box_distance2(nodes_[static_cast<std::size_t>(node.left)].box, p);
    const double dr = box_distance2(nodes_[static_cast<std::size_t>(node.right)].box, p);
    // Push the farther child first so the nearer one is popped next.
    if (dl < dr) {
      stack[top++] = node.right;
      stack[top++] = node.left;
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  best.distance = std::sqrt(best_d2);
  return best;
}

}  // namespace topofit
