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

#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"
#include "topofit/primitives.hpp"

namespace {

using namespace topofit;

long euler(const Mesh& m) {
  return static_cast<long>(m.vertex_count()) - static_cast<long>(unique_edges(m).size()) +
         static_cast<long>(m.face_count());
}

TEST(Subdivide, TetrahedronCounts) {
  const Subdivision s = subdivide_midpoint(tetrahedron());
  EXPECT_EQ(s.mesh.vertex_count(), 10u);
  EXPECT_EQ(s.mesh.face_count(), 16u);
}

TEST(Subdivide, EulerBookkeepingOnWatertightMeshes) {
  for (const Mesh& m : {tetrahedron(), cube(), octahedron(), icosahedron(), icosphere(2)}) {
    const Subdivision s = subdivide_midpoint(m);
    EXPECT_EQ(s.mesh.vertex_count(), m.vertex_count() + unique_edges(m).size());
    EXPECT_EQ(s.mesh.face_count(), 4 * m.face_count());
    EXPECT_EQ(euler(s.mesh), euler(m));
    EXPECT_TRUE(is_watertight(s.mesh));
    EXPECT_NO_THROW(check_consistent_winding(s.mesh));
  }
}

TEST(Subdivide, MidpointsAndProvenance) {
  const Mesh m = testutil::jitter(icosahedron(), 0.1, 2);
  const Subdivision s = subdivide_midpoint(m);
  ASSERT_EQ(s.origins.size(), s.mesh.vertex_count());
  std::set<Edge> seen;
  for (std::size_t i = 0; i < s.origins.size(); ++i) {
    const VertexOrigin& o = s.origins[i];
    if (!o.parent_edge) {
      ASSERT_EQ(o.original, static_cast<int>(i));
      EXPECT_EQ(s.mesh.vertices[i], m.vertices[i]);
      continue;
    }
    EXPECT_TRUE(seen.insert(*o.parent_edge).second);
    const Vec3 mid = 0.5 * (m.vertices[static_cast<std::size_t>(o.parent_edge->a)] +
                            m.vertices[static_cast<std::size_t>(o.parent_edge->b)]);
    EXPECT_EQ(s.mesh.vertices[i], mid);
  }
  EXPECT_EQ(seen.size(), unique_edges(m).size());
}

TEST(Subdivide, MaskPropagationIsConservative) {
  const Mesh m = icosahedron();
  VertexMask mask(m.vertex_count(), true);
  mask.set(0, false);
  const Subdivision s = subdivide_midpoint(m);
  const VertexMask out = propagate_mask(s, mask);
  ASSERT_EQ(out.size(), s.mesh.vertex_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const VertexOrigin& o = s.origins[i];
    const bool expected = o.parent_edge ? mask[static_cast<std::size_t>(o.parent_edge->a)] &&
                                              mask[static_cast<std::size_t>(o.parent_edge->b)]
                                        : mask[i];
    EXPECT_EQ(out[i], expected) << i;
  }
  EXPECT_EQ(out.count(), s.mesh.vertex_count() - 1 - 5);
}

TEST(Subdivide, MaskLengthMismatchThrows) {
  const Subdivision s = subdivide_midpoint(tetrahedron());
  EXPECT_THROW(propagate_mask(s, VertexMask(3, true)), Error);
}

}  // namespace
