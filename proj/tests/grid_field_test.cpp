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

#include "topofit/grid_field.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

namespace {

using namespace topofit;

const Aabb kUnit{Vec3::Zero(), Vec3::Ones()};

// Trilinear interpolation from first principles, for the oracle.
double trilinear_oracle(const GridField& g, const Vec3& x) {
  const Vec3 s = g.spacing();
  const Vec3 t = (x - g.bounds().min).cwiseQuotient(s);
  int i[3];
  double f[3];
  for (int a = 0; a < 3; ++a) {
    i[a] = std::clamp(static_cast<int>(std::floor(t(a))), 0, g.resolution()[static_cast<std::size_t>(a)] - 2);
    f[a] = t(a) - i[a];
  }
  double v = 0.0;
  for (int dz = 0; dz < 2; ++dz) {
    for (int dy = 0; dy < 2; ++dy) {
      for (int dx = 0; dx < 2; ++dx) {
        const double w = (dx ? f[0] : 1 - f[0]) * (dy ? f[1] : 1 - f[1]) * (dz ? f[2] : 1 - f[2]);
        v += w * g.at(i[0] + dx, i[1] + dy, i[2] + dz);
      }
    }
  }
  return v;
}

GridField random_grid(GridResolution res, std::uint64_t seed,
                      Aabb box = {Vec3(-0.5, -0.4, -0.6), Vec3(0.5, 0.7, 0.4)}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::vector<float> v(static_cast<std::size_t>(res[0] * res[1] * res[2]));
  for (float& x : v) x = u(rng);
  return GridField(res, box, std::move(v));
}

TEST(GridField, CentreOfTwoCubedGridIsCornerMean) {
  std::vector<float> v = {0.0f, 0.125f, 0.25f, 0.375f, 0.5f, 0.625f, 0.75f, 1.0f};
  const GridField g({2, 2, 2}, kUnit, v);
  double mean = 0.0;
  for (float x : v) mean += x;
  EXPECT_DOUBLE_EQ(g.eval(Vec3::Constant(0.5)), mean / 8.0);
}

TEST(GridField, LinearRampHasUnitXGradient) {
  const GridResolution res{5, 4, 3};
  std::vector<float> v;
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 4; ++j) {
      for (int i = 0; i < 5; ++i) v.push_back(static_cast<float>(i) / 4.0f);
    }
  }
  const GridField g(res, kUnit, v);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const Vec3 x = testutil::random_in_box(rng, Vec3::Constant(0.01), Vec3::Constant(0.99));
    const FieldSample s = g.eval_grad(x);
    EXPECT_NEAR(s.value, x.x(), 1e-7);
    EXPECT_NEAR((s.gradient - Vec3::UnitX()).norm(), 0.0, 1e-6);
  }
}

TEST(GridField, UpperFaceUsesInteriorCell) {
  const GridResolution res{3, 2, 2};
  std::vector<float> v;
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) {
      for (float x : {0.0f, 0.2f, 1.0f}) v.push_back(x);
    }
  }
  const GridField g(res, kUnit, v);
  const FieldSample s = g.eval_grad(Vec3(1.0, 0.5, 0.5));
  EXPECT_NEAR(s.value, 1.0, 1e-12);
  EXPECT_NEAR(s.gradient.x(), 1.6, 1e-6);
}

TEST(GridField, MatchesTrilinearOracle) {
  const GridField g = random_grid({7, 6, 5}, 42);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 1000; ++t) {
    const Vec3 x = testutil::random_in_box(rng, g.bounds().min, g.bounds().max);
    EXPECT_NEAR(g.eval(x), trilinear_oracle(g, x), 1e-12);
  }
}

TEST(GridField, GradientMatchesFiniteDifferencesOffCellBoundaries) {
  const GridField g = random_grid({9, 8, 7}, 5);
  std::mt19937_64 rng(6);
  int checked = 0;
  while (checked < 1000) {
    const Vec3 x = testutil::random_in_box(rng, g.bounds().min, g.bounds().max);
    const Vec3 t = (x - g.bounds().min).cwiseQuotient(g.spacing());
    bool near_boundary = false;
    for (int a = 0; a < 3; ++a) {
      const double frac = t(a) - std::floor(t(a));
      near_boundary |= std::min(frac, 1.0 - frac) * g.spacing()(a) < 1e-3;
    }
    if (near_boundary) continue;
    const FieldSample s = g.eval_grad(x);
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
      const double fd = (g.eval(x + h * Vec3::Unit(k)) - g.eval(x - h * Vec3::Unit(k))) / (2 * h);
      EXPECT_LT(testutil::relative_error(s.gradient(k), fd, 1e-6), 1e-5);
    }
    ++checked;
  }
}

TEST(GridField, OutOfBoxIsZero) {
  const GridField g = random_grid({4, 4, 4}, 3);
  EXPECT_EQ(g.eval(Vec3(5, 0, 0)), 0.0);
  EXPECT_EQ(g.eval_grad(Vec3(0, -5, 0)).gradient, Vec3::Zero());
}

TEST(GridField, ConstructorValidates) {
  EXPECT_THROW(GridField({1, 2, 2}, kUnit, std::vector<float>(4, 0.0f)), Error);
  EXPECT_THROW(GridField({2, 2, 2}, kUnit, std::vector<float>(7, 0.0f)), Error);
  std::vector<float> bad(8, 0.0f);
  bad[3] = 1.5f;
  EXPECT_THROW(GridField({2, 2, 2}, kUnit, bad), Error);
}

TEST(GridField, BinaryRoundTripIsBitExact) {
  const GridField g = random_grid({5, 6, 7}, 9);
  std::stringstream ss;
  write_grid(ss, g);
  const GridField back = read_grid(ss);
  EXPECT_EQ(back.resolution(), g.resolution());
  EXPECT_EQ(back.bounds().min, g.bounds().min);
  EXPECT_EQ(back.bounds().max, g.bounds().max);
  EXPECT_EQ(back.values(), g.values());
}

TEST(GridField, HeaderLayout) {
  const GridField g = random_grid({2, 3, 4}, 1);
  std::stringstream ss;
  write_grid(ss, g);
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 8), "TPFGRID1");
  EXPECT_EQ(bytes.size(), 8u + 12u + 48u + 4u * 24u);
}

TEST(GridField, TruncatedFileNamesOffset) {
  const GridField g = random_grid({2, 2, 2}, 1);
  std::stringstream ss;
  write_grid(ss, g);
  std::istringstream cut(ss.str().substr(0, 40));
  try {
    read_grid(cut, "f.grid");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("f.grid"), std::string::npos) << e.what();
  }
}

TEST(PixelAlignedField, EqualsGridAtProjectedPoint) {
  const GridField g = random_grid({8, 8, 8}, 12);
  Camera cam = Camera::identity();
  cam.rotation = Eigen::AngleAxisd(0.4, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  cam.translation = Vec3(0.05, -0.02, 0.01);
  const PixelAlignedField f(cam, g);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 1000; ++t) {
    const Vec3 x = testutil::random_in_box(rng, Vec3::Constant(-0.6), Vec3::Constant(0.6));
    EXPECT_EQ(f.eval(x), g.eval(cam.project(x)));
  }
}

TEST(PixelAlignedField, GradientMatchesFiniteDifferences) {
  for (Projection mode : {Projection::Orthogonal, Projection::Perspective}) {
    // Grid box in (u, v, Z) covering the sampled points for both modes.
    const Aabb box = mode == Projection::Orthogonal
                         ? Aabb{Vec3::Constant(-0.6), Vec3::Constant(0.6)}
                         : Aabb{Vec3(-0.8, -0.8, 0.3), Vec3(0.8, 0.8, 1.5)};
    const GridField g = random_grid({8, 8, 8}, 14, box);
    Camera cam = Camera::identity(mode);
    cam.rotation = Eigen::AngleAxisd(0.3, Vec3(0, 1, 0)).toRotationMatrix();
    if (mode == Projection::Perspective) cam.translation = Vec3(0, 0, 0.9);
    const PixelAlignedField f(cam, g);
    std::mt19937_64 rng(15);
    int checked = 0;
    for (int t = 0; t < 400; ++t) {
      const Vec3 x = testutil::random_in_box(rng, Vec3::Constant(-0.3), Vec3::Constant(0.3));
      // Skip points whose stencil could straddle a cell face of the grid.
      const Vec3 cell = (cam.project(x) - g.bounds().min).cwiseQuotient(g.spacing());
      bool near_face = false;
      for (int a = 0; a < 3; ++a) near_face |= std::abs(cell(a) - std::round(cell(a))) < 1e-4;
      if (near_face) continue;
      const FieldSample s = f.eval_grad(x);
      EXPECT_GT(s.gradient.norm(), 0.0);
      const double h = 1e-7;
      for (int k = 0; k < 3; ++k) {
        const double fd = (f.eval(x + h * Vec3::Unit(k)) - f.eval(x - h * Vec3::Unit(k))) / (2 * h);
        EXPECT_LT(testutil::relative_error(s.gradient(k), fd, 1e-6), 1e-4);
      }
      ++checked;
    }
    EXPECT_GT(checked, 300);
  }
}

TEST(GridField, SampleOfConstantFieldIsConstant) {
  const ConstantField c(0.25, kUnit);
  const GridField a = GridField::sample(c, {6, 5, 4}, kUnit);
  for (float v : a.values()) EXPECT_EQ(v, 0.25f);
}

}  // namespace
