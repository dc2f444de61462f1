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

#include "topofit/bake.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "topofit/inside.hpp"
#include "topofit/primitives.hpp"
#include "topofit/scene.hpp"

namespace {

using namespace topofit;

TEST(Bake, CubeInteriorNodesAreOne) {
  const Aabb box{Vec3::Constant(-0.4), Vec3::Constant(0.4)};
  const GridField g = bake_field(cube(1.0), {9, 9, 9}, box, false);
  for (float v : g.values()) EXPECT_EQ(v, 1.0f);
}

TEST(Bake, DisjointBoxIsAllZero) {
  const Aabb box{Vec3::Constant(2.0), Vec3::Constant(3.0)};
  const GridField g = bake_field(cube(1.0), {6, 6, 6}, box, true);
  for (float v : g.values()) EXPECT_EQ(v, 0.0f);
}

TEST(Bake, SmoothingIsSeparableQuarterHalfQuarter) {
  const Aabb box{Vec3::Constant(-1.0), Vec3::Constant(1.0)};
  const GridResolution res{21, 21, 21};
  const GridField raw = bake_field(cube(1.0), res, box, false);
  const GridField smooth = bake_field(cube(1.0), res, box, true);
  // Oracle: apply the blur to the raw grid, clamping indices at the border.
  std::vector<double> a(raw.values().begin(), raw.values().end()), b(a.size());
  for (int axis = 0; axis < 3; ++axis) {
    for (int k = 0; k < 21; ++k) {
      for (int j = 0; j < 21; ++j) {
        for (int i = 0; i < 21; ++i) {
          int idx[3] = {i, j, k};
          const auto at = [&](int d) {
            int c[3] = {idx[0], idx[1], idx[2]};
            c[axis] = std::clamp(c[axis] + d, 0, 20);
            return a[static_cast<std::size_t>(c[0] + 21 * (c[1] + 21 * c[2]))];
          };
          b[static_cast<std::size_t>(i + 21 * (j + 21 * k))] = 0.25 * at(-1) + 0.5 * at(0) + 0.25 * at(1);
        }
      }
    }
    std::swap(a, b);
  }
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(smooth.values()[i], a[i], 1e-6);
}

TEST(Bake, RejectsOpenMesh) {
  Mesh m = cube();
  m.faces.pop_back();
  EXPECT_THROW(bake_field(m, {4, 4, 4}, Aabb{Vec3::Constant(-1), Vec3::Constant(1)}), Error);
}

TEST(Bake, BakedSceneAgreesWithInsideTest) {
  SceneParams p;
  p.kind = SceneKind::BumpySphere;
  p.grid = {64, 64, 64};
  p.target_level = 4;
  p.template_level = 2;
  p.source = FieldSource::Baked;
  const SyntheticScene scene = generate_scene(p);
  const InsideTester tester(scene.target);
  const GridField raw = bake_field(scene.target, p.grid, scene.field.bounds(), false);
  std::mt19937_64 rng(31);
  int compared = 0, agree = 0;
  const Vec3 spacing = raw.spacing();
  while (compared < 100000) {
    const Vec3 x = testutil::random_in_box(rng, raw.bounds().min, raw.bounds().max);
    // The raw field is piecewise trilinear in 0/1 nodes; compare only where
    // all eight corners of the enclosing cell agree.
    const Vec3 t = (x - raw.bounds().min).cwiseQuotient(spacing);
    const int i = std::min(static_cast<int>(t.x()), 62), j = std::min(static_cast<int>(t.y()), 62),
              k = std::min(static_cast<int>(t.z()), 62);
    float lo = 1.0f, hi = 0.0f;
    for (int c = 0; c < 8; ++c) {
      const float v = raw.at(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (lo != hi) continue;
    ++compared;
    agree += (raw.eval(x) > 0.5) == tester.contains(x) ? 1 : 0;
  }
  EXPECT_GE(static_cast<double>(agree) / compared, 0.999);
}

}  // namespace
