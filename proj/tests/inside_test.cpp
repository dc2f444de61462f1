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

#include "topofit/inside.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "topofit/closest_point.hpp"
#include "topofit/primitives.hpp"

namespace {

using namespace topofit;

TEST(Inside, CubeCentreAndOutside) {
  EXPECT_TRUE(point_inside(cube(1.0), Vec3::Zero()));
  EXPECT_FALSE(point_inside(cube(1.0), Vec3(2, 0, 0)));
}

TEST(Inside, WindingNumberValues) {
  const InsideTester t(icosphere(2));
  EXPECT_NEAR(t.winding_number(Vec3::Zero()), 1.0, 1e-12);
  EXPECT_NEAR(t.winding_number(Vec3(3, 1, 2)), 0.0, 1e-12);
}

TEST(Inside, RejectsOpenMesh) {
  Mesh m = icosphere(1);
  m.faces.pop_back();
  EXPECT_THROW(InsideTester{m}, Error);
}

TEST(Inside, AgreesWithRayParityOracle) {
  const Mesh m = testutil::jitter(icosphere(3, 0.5), 0.01, 77);
  const InsideTester tester(m);
  const TriangleBvh bvh(m);
  std::mt19937_64 rng(99);
  int compared = 0, agree = 0;
  while (compared < 10000) {
    const Vec3 p = testutil::random_in_box(rng, Vec3::Constant(-0.7), Vec3::Constant(0.7));
    if (bvh.closest(p).distance <= 1e-6) continue;
    ++compared;
    agree += tester.contains(p) == testutil::ray_parity_oracle(m, p) ? 1 : 0;
  }
  EXPECT_EQ(agree, compared);
}

TEST(Inside, GridClassificationMatchesPointQueries) {
  const Mesh m = testutil::jitter(icosphere(2, 0.5), 0.02, 4);
  const InsideTester tester(m);
  const Aabb box{Vec3::Constant(-0.6), Vec3::Constant(0.6)};
  const GridResolution res{17, 13, 11};
  const std::vector<std::uint8_t> grid = tester.classify_grid(res, box);
  ASSERT_EQ(grid.size(), 17u * 13u * 11u);
  const Vec3 step = box.extent().cwiseQuotient(Vec3(16, 12, 10));
  std::size_t idx = 0;
  for (int k = 0; k < res[2]; ++k) {
    for (int j = 0; j < res[1]; ++j) {
      for (int i = 0; i < res[0]; ++i, ++idx) {
        const Vec3 p = box.min + Vec3(i, j, k).cwiseProduct(step);
        EXPECT_EQ(grid[idx] != 0, tester.contains(p)) << i << ' ' << j << ' ' << k;
      }
    }
  }
}

TEST(Inside, ScanlinesThroughVerticesAreCountedOnce) {
  // Octahedron vertices sit on the coordinate axes, so the x-scanline
  // through the origin passes exactly through two vertices.
  const InsideTester tester(octahedron(1.0));
  const Aabb box{Vec3::Constant(-2.0), Vec3::Constant(2.0)};
  const std::vector<std::uint8_t> grid = tester.classify_grid({5, 5, 5}, box);
  const auto at = [&](int i, int j, int k) { return grid[static_cast<std::size_t>(i + 5 * (j + 5 * k))]; };
  EXPECT_EQ(at(2, 2, 2), 1);
  EXPECT_EQ(at(0, 2, 2), 0);
  EXPECT_EQ(at(4, 2, 2), 0);
  EXPECT_EQ(at(2, 0, 2), 0);
}

}  // namespace
