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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "topofit/primitives.hpp"

namespace {

using namespace topofit;

Mesh right_triangle() {
  Mesh m;
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  m.faces = {{0, 1, 2}};
  return m;
}

TEST(Mesh, ValidateRejectsOutOfRangeIndex) {
  Mesh m = right_triangle();
  m.faces[0][2] = 3;
  EXPECT_THROW(validate(m), Error);
}

TEST(Mesh, ValidateRejectsRepeatedIndex) {
  Mesh m = right_triangle();
  m.faces[0] = {0, 1, 1};
  EXPECT_THROW(validate(m), Error);
}

TEST(Mesh, FaceNormalOfCcwTriangleIsPlusZ) {
  const std::vector<Vec3> n = face_normals(right_triangle());
  ASSERT_EQ(n.size(), 1u);
  EXPECT_NEAR((n[0] - Vec3::UnitZ()).norm(), 0.0, 1e-15);
}

TEST(Mesh, FlippingWindingNegatesNormal) {
  Mesh m = right_triangle();
  const Vec3 before = face_normals(m)[0];
  std::swap(m.faces[0][1], m.faces[0][2]);
  EXPECT_NEAR((face_normals(m)[0] + before).norm(), 0.0, 1e-15);
}

TEST(Mesh, ZeroAreaFaceThrowsNamingFace) {
  Mesh m = right_triangle();
  m.vertices[2] = Vec3(2, 0, 0);
  try {
    face_normals(m);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find('0'), std::string::npos);
  }
}

TEST(Mesh, IcosphereVertexNormalsAreRadial) {
  const Mesh m = icosphere(3, 0.5);
  const std::vector<Vec3> n = vertex_normals(m);
  double worst = 0.0;
  for (std::size_t i = 0; i < m.vertex_count(); ++i) {
    const double c = std::clamp(n[i].dot(m.vertices[i].normalized()), -1.0, 1.0);
    worst = std::max(worst, std::acos(c));
  }
  EXPECT_LT(worst * 180.0 / std::numbers::pi, 2.0);
}

TEST(Mesh, PrimitivesAreWatertightAndOutward) {
  for (const Mesh& m : {tetrahedron(), cube(), octahedron(), icosahedron(), icosphere(2)}) {
    EXPECT_TRUE(is_watertight(m));
    EXPECT_NO_THROW(check_consistent_winding(m));
    EXPECT_GT(signed_volume(m), 0.0);
  }
}

TEST(Mesh, CubeVolumeAndArea) {
  const Mesh m = cube(2.0);
  EXPECT_NEAR(signed_volume(m), 8.0, 1e-12);
  EXPECT_NEAR(surface_area(m), 24.0, 1e-12);
}

TEST(Mesh, IcosphereVertexCounts) {
  const std::size_t expected[] = {12, 42, 162, 642, 2562};
  for (int level = 0; level < 5; ++level) {
    EXPECT_EQ(icosphere(level).vertex_count(), expected[level]);
  }
}

TEST(Mesh, UniqueEdgesOfTetrahedron) {
  const std::vector<Edge> e = unique_edges(tetrahedron());
  ASSERT_EQ(e.size(), 6u);
  EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
  for (const Edge& x : e) EXPECT_LT(x.a, x.b);
}

TEST(Mesh, InconsistentWindingDetected) {
  Mesh m = tetrahedron();
  std::swap(m.faces[0][1], m.faces[0][2]);
  EXPECT_THROW(check_consistent_winding(m), Error);
}

TEST(Mesh, OpenMeshIsNotWatertight) {
  Mesh m = tetrahedron();
  m.faces.pop_back();
  EXPECT_FALSE(is_watertight(m));
}

TEST(Mesh, TopologyHashIgnoresPositions) {
  const Mesh a = icosphere(2);
  const Mesh b = testutil::jitter(a, 0.1, 3);
  EXPECT_EQ(topology_hash(a), topology_hash(b));
  Mesh c = a;
  std::swap(c.faces[0][0], c.faces[0][1]);
  EXPECT_NE(topology_hash(a), topology_hash(c));
}

TEST(Mesh, VertexMaskCount) {
  VertexMask m(10, true);
  m.set(3, false);
  m.set(7, false);
  EXPECT_EQ(m.count(), 8u);
}

}  // namespace
