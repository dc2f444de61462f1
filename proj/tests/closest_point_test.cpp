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

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "topofit/primitives.hpp"

namespace {

using namespace topofit;

TEST(ClosestPoint, TriangleRegions) {
  const Vec3 a(0, 0, 0), b(1, 0, 0), c(0, 1, 0);
  EXPECT_NEAR((closest_point_on_triangle(Vec3(0.2, 0.2, 1), a, b, c) - Vec3(0.2, 0.2, 0)).norm(), 0, 1e-15);
  EXPECT_EQ(closest_point_on_triangle(Vec3(-1, -1, 0), a, b, c), a);
  EXPECT_EQ(closest_point_on_triangle(Vec3(2, -1, 0), a, b, c), b);
  EXPECT_NEAR((closest_point_on_triangle(Vec3(0.5, -1, 0.3), a, b, c) - Vec3(0.5, 0, 0)).norm(), 0, 1e-15);
  EXPECT_NEAR((closest_point_on_triangle(Vec3(1, 1, 0), a, b, c) - Vec3(0.5, 0.5, 0)).norm(), 0, 1e-15);
}

TEST(ClosestPoint, TriangleMatchesIndependentOracle) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 2000; ++t) {
    const Vec3 a = testutil::random_in_box(rng, Vec3::Constant(-1), Vec3::Constant(1));
    const Vec3 b = testutil::random_in_box(rng, Vec3::Constant(-1), Vec3::Constant(1));
    const Vec3 c = testutil::random_in_box(rng, Vec3::Constant(-1), Vec3::Constant(1));
    if ((b - a).cross(c - a).norm() < 1e-3) continue;
    const Vec3 p = testutil::random_in_box(rng, Vec3::Constant(-2), Vec3::Constant(2));
    const double d = (closest_point_on_triangle(p, a, b, c) - p).norm();
    EXPECT_NEAR(d, testutil::triangle_distance(p, a, b, c), 1e-12);
  }
}

TEST(ClosestPoint, BvhMatchesBruteForce) {
  const Mesh m = testutil::jitter(icosphere(3, 0.5), 0.02, 6);
  const TriangleBvh bvh(m);
  EXPECT_EQ(bvh.face_count(), m.face_count());
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const Vec3 p = testutil::random_in_box(rng, Vec3::Constant(-1), Vec3::Constant(1));
    const ClosestHit hit = bvh.closest(p);
    EXPECT_NEAR(hit.distance, testutil::brute_force_distance(m, p), 1e-12);
    EXPECT_NEAR((hit.point - p).norm(), hit.distance, 1e-12);
    const Face& f = m.faces[hit.face];
    const Vec3 on_face = closest_point_on_triangle(p, m.vertices[static_cast<std::size_t>(f[0])],
                                                   m.vertices[static_cast<std::size_t>(f[1])],
                                                   m.vertices[static_cast<std::size_t>(f[2])]);
    EXPECT_NEAR((on_face - hit.point).norm(), 0.0, 1e-12);
  }
}

TEST(ClosestPoint, EmptyMeshThrows) { EXPECT_THROW(TriangleBvh{Mesh{}}, Error); }

}  // namespace
