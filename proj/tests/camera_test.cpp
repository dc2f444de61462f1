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

#include "topofit/camera.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

namespace {

using namespace topofit;

Camera rotated_camera(Projection mode) {
  Camera c = Camera::identity(mode);
  c.rotation = (Eigen::AngleAxisd(0.3, Vec3::UnitY()) * Eigen::AngleAxisd(-0.2, Vec3::UnitX()))
                   .toRotationMatrix();
  c.translation = Vec3(0.1, -0.05, 2.0);
  if (mode == Projection::Perspective) {
    c.focal = {1.3, 1.1};
    c.principal = {0.02, -0.01};
  }
  return c;
}

TEST(Camera, IdentityOrthogonalProjection) {
  const Vec3 p = Camera::identity().project(Vec3(0.3, -0.2, 0.7));
  EXPECT_EQ(p, Vec3(0.3, -0.2, 0.7));
}

TEST(Camera, IdentityPerspectiveProjection) {
  const Vec3 p = Camera::identity(Projection::Perspective).project(Vec3(0.5, 0.5, 2.0));
  EXPECT_NEAR((p - Vec3(0.25, 0.25, 2.0)).norm(), 0.0, 1e-15);
}

TEST(Camera, PerspectiveBehindCameraThrows) {
  const Camera c = Camera::identity(Projection::Perspective);
  EXPECT_THROW(c.project(Vec3(0, 0, -1)), Error);
  EXPECT_THROW(c.project(Vec3(0, 0, 0)), Error);
  EXPECT_FALSE(c.try_project(Vec3(0, 0, -1)).has_value());
}

TEST(Camera, RoundTrip) {
  std::mt19937_64 rng(4);
  for (Projection mode : {Projection::Orthogonal, Projection::Perspective}) {
    const Camera c = rotated_camera(mode);
    for (int i = 0; i < 200; ++i) {
      const Vec3 x = testutil::random_in_box(rng, Vec3::Constant(-0.5), Vec3::Constant(0.5));
      EXPECT_NEAR((c.unproject(c.project(x)) - x).norm(), 0.0, 1e-12);
    }
  }
}

TEST(Camera, DepthDirectionMovesOnlyDepth) {
  const Camera c = rotated_camera(Projection::Orthogonal);
  const Vec3 x(0.1, 0.2, 0.3);
  const Vec3 a = c.project(x), b = c.project(x + 0.25 * c.depth_direction());
  EXPECT_NEAR(b.x() - a.x(), 0.0, 1e-15);
  EXPECT_NEAR(b.y() - a.y(), 0.0, 1e-15);
  EXPECT_NEAR(b.z() - a.z(), 0.25, 1e-15);
}

TEST(Camera, JacobianMatchesFiniteDifferences) {
  std::mt19937_64 rng(9);
  for (Projection mode : {Projection::Orthogonal, Projection::Perspective}) {
    const Camera c = rotated_camera(mode);
    for (int t = 0; t < 100; ++t) {
      const Vec3 x = testutil::random_in_box(rng, Vec3::Constant(-0.5), Vec3::Constant(0.5));
      const Mat3 j = c.projection_jacobian(x);
      for (int k = 0; k < 3; ++k) {
        const double h = 1e-6;
        const Vec3 d = (c.project(x + h * Vec3::Unit(k)) - c.project(x - h * Vec3::Unit(k))) / (2 * h);
        for (int r = 0; r < 3; ++r) EXPECT_LT(testutil::relative_error(j(r, k), d(r), 1e-3), 1e-6);
      }
    }
  }
}

TEST(Camera, ValidateRejectsNonRotation) {
  Camera c;
  c.rotation(0, 0) = 2.0;
  EXPECT_THROW(c.validate(), Error);
  c = Camera::identity();
  c.rotation = -Mat3::Identity();
  EXPECT_THROW(c.validate(), Error);
}

TEST(Camera, FileRoundTripIsExact) {
  const Camera c = rotated_camera(Projection::Perspective);
  std::stringstream ss;
  write_camera(ss, c);
  const Camera back = read_camera(ss);
  EXPECT_EQ(back.rotation, c.rotation);
  EXPECT_EQ(back.translation, c.translation);
  EXPECT_EQ(back.mode, c.mode);
  EXPECT_EQ(back.focal, c.focal);
  EXPECT_EQ(back.principal, c.principal);
}

TEST(Camera, FileErrorNamesSource) {
  std::istringstream in("rotation = 1 0 0 0 1 0 0 0\n");
  try {
    read_camera(in, "cam.txt");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("cam.txt"), std::string::npos) << e.what();
  }
}

}  // namespace
