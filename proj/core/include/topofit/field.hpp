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

#include <memory>
#include <vector>

#include "topofit/camera.hpp"
#include "topofit/types.hpp"

namespace topofit {

struct FieldSample {
  double value = 0.0;
  Vec3 gradient = Vec3::Zero();
};

/// Occupancy function R^3 -> [0, 1]: ~1 inside the subject, ~0 outside, 0.5
/// on the surface. Evaluation outside `bounds()` returns 0 with zero gradient.
/// Implementations are immutable and safe to evaluate concurrently.
class ImplicitField {
 public:
  virtual ~ImplicitField() = default;
  virtual double eval(const Vec3& x) const = 0;
  virtual FieldSample eval_grad(const Vec3& x) const = 0;
  virtual Aabb bounds() const = 0;
};

/// Signed distance (negative inside) with its spatial gradient.
class SignedDistance {
 public:
  virtual ~SignedDistance() = default;
  virtual double distance(const Vec3& x) const = 0;
  virtual Vec3 gradient(const Vec3& x) const = 0;
};

class SphereSdf final : public SignedDistance {
 public:
  explicit SphereSdf(double radius, Vec3 center = Vec3::Zero())
      : radius_(radius), center_(std::move(center)) {}
  double distance(const Vec3& x) const override;
  Vec3 gradient(const Vec3& x) const override;

 private:
  double radius_;
  Vec3 center_;
};

/// First-order ellipsoid distance k0 (k0 - 1) / k1 with k0 = |x / r| and
/// k1 = |x / r^2|. Its zero set is exactly the ellipsoid and it matches the
/// Euclidean distance to first order near the surface.
class EllipsoidSdf final : public SignedDistance {
 public:
  explicit EllipsoidSdf(Vec3 semi_axes) : axes_(std::move(semi_axes)) {}
  double distance(const Vec3& x) const override;
  Vec3 gradient(const Vec3& x) const override;
  const Vec3& semi_axes() const { return axes_; }

 private:
  Vec3 axes_;
};

/// Union of capsules (segment + radius); gradient of the closest capsule.
class CapsuleUnionSdf final : public SignedDistance {
 public:
  struct Capsule {
    Vec3 a;
    Vec3 b;
    double radius;
  };
  explicit CapsuleUnionSdf(std::vector<Capsule> capsules) : capsules_(std::move(capsules)) {}
  double distance(const Vec3& x) const override;
  Vec3 gradient(const Vec3& x) const override;

 private:
  std::size_t closest(const Vec3& x, double* dist) const;
  std::vector<Capsule> capsules_;
};

/// Star-shaped surface r = radius + amplitude * h(u), u = x / |x|, where h is
/// a polynomial of total degree <= `degree` in (u_x, u_y, u_z). On the unit
/// sphere that spans exactly the spherical harmonics up to `degree`. The
/// returned "distance" is |x| - r(u), which is exact along rays.
class BumpySphereSdf final : public SignedDistance {
 public:
  /// Draws decaying random coefficients from `seed` and rescales h so its
  /// maximum magnitude over a dense direction sample is 1.
  BumpySphereSdf(double radius, double amplitude, int degree, unsigned long long seed);
  double distance(const Vec3& x) const override;
  Vec3 gradient(const Vec3& x) const override;

  /// Surface radius along direction `u` (need not be unit length).
  double surface_radius(const Vec3& u) const;

 private:
  double bump(const Vec3& u, Vec3* grad) const;

  double radius_;
  double amplitude_;
  int degree_;
  struct Term {
    int i, j, k;
    double c;
  };
  std::vector<Term> terms_;
  double scale_ = 1.0;
};

/// Smooth occupancy s(-d / width) from a signed distance, s the logistic
/// function. Zero outside `bounds`.
class SdfOccupancyField final : public ImplicitField {
 public:
  SdfOccupancyField(std::shared_ptr<const SignedDistance> sdf, double width, Aabb bounds);
  double eval(const Vec3& x) const override;
  FieldSample eval_grad(const Vec3& x) const override;
  Aabb bounds() const override { return bounds_; }
  double width() const { return width_; }
  const SignedDistance& sdf() const { return *sdf_; }

 private:
  std::shared_ptr<const SignedDistance> sdf_;
  double width_;
  Aabb bounds_;
};

class ConstantField final : public ImplicitField {
 public:
  ConstantField(double value, Aabb bounds);
  double eval(const Vec3& x) const override;
  FieldSample eval_grad(const Vec3& x) const override;
  Aabb bounds() const override { return bounds_; }

 private:
  double value_;
  Aabb bounds_;
};

/// Numerically stable logistic function.
double logistic(double x);

constexpr double kDefaultOccupancyWidth = 0.02;

}  // namespace topofit
