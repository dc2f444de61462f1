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

#include "topofit/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/core.h>

namespace topofit {

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// --- sphere -----------------------------------------------------------------

double SphereSdf::distance(const Vec3& x) const { return (x - center_).norm() - radius_; }

Vec3 SphereSdf::gradient(const Vec3& x) const {
  const Vec3 d = x - center_;
  const double n = d.norm();
  return n > 0.0 ? Vec3(d / n) : Vec3::Zero();
}

// --- ellipsoid --------------------------------------------------------------

double EllipsoidSdf::distance(const Vec3& x) const {
  const double k0 = x.cwiseQuotient(axes_).norm();
  const double k1 = x.cwiseQuotient(axes_.cwiseProduct(axes_)).norm();
  if (k1 == 0.0) return -axes_.minCoeff();
  return k0 * (k0 - 1.0) / k1;
}

Vec3 EllipsoidSdf::gradient(const Vec3& x) const {
  const Vec3 r2 = axes_.cwiseProduct(axes_);
  const Vec3 r4 = r2.cwiseProduct(r2);
  const double k0 = x.cwiseQuotient(axes_).norm();
  const double k1 = x.cwiseQuotient(r2).norm();
  if (k1 == 0.0 || k0 == 0.0) return Vec3::Zero();
  const Vec3 dk0 = x.cwiseQuotient(r2) / k0;
  const Vec3 dk1 = x.cwiseQuotient(r4) / k1;
  return ((2.0 * k0 - 1.0) * k1 * dk0 - k0 * (k0 - 1.0) * dk1) / (k1 * k1);
}

// --- capsules ---------------------------------------------------------------

namespace {

Vec3 closest_on_segment(const Vec3& x, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double t = std::clamp((x - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

}  // namespace

std::size_t CapsuleUnionSdf::closest(const Vec3& x, double* dist) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < capsules_.size(); ++i) {
    const Capsule& c = capsules_[i];
    const double d = (x - closest_on_segment(x, c.a, c.b)).norm() - c.radius;
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  *dist = best_d;
  return best;
}

double CapsuleUnionSdf::distance(const Vec3& x) const {
  double d = 0.0;
  closest(x, &d);
  return d;
}

Vec3 CapsuleUnionSdf::gradient(const Vec3& x) const {
  double d = 0.0;
  const Capsule& c = capsules_[closest(x, &d)];
  const Vec3 delta = x - closest_on_segment(x, c.a, c.b);
  const double n = delta.norm();
  return n > 0.0 ? Vec3(delta / n) : Vec3::Zero();
}

// --- bumpy sphere -----------------------------------------------------------

BumpySphereSdf::BumpySphereSdf(double radius, double amplitude, int degree,
                               unsigned long long seed)
    : radius_(radius), amplitude_(amplitude), degree_(degree) {
  if (degree < 0 || degree > 15) throw Error("bump degree must lie in [0, 15]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int total = 1; total <= degree; ++total) {
    for (int i = total; i >= 0; --i) {
      for (int j = total - i; j >= 0; --j) {
        const int k = total - i - j;
        terms_.push_back({i, j, k, normal(rng) / static_cast<double>(total)});
      }
    }
  }
  // Normalize the peak magnitude over a Fibonacci direction set.
  double peak = 0.0;
  constexpr int kDirections = 20000;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int s = 0; s < kDirections; ++s) {
    const double z = 1.0 - 2.0 * (s + 0.5) / kDirections;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * s;
    peak = std::max(peak, std::abs(bump(Vec3(r * std::cos(phi), r * std::sin(phi), z), nullptr)));
  }
  scale_ = peak > 0.0 ? 1.0 / peak : 0.0;
}

double BumpySphereSdf::bump(const Vec3& u, Vec3* grad) const {
  const int n = degree_ + 1;
  double px[16], py[16], pz[16];
  px[0] = py[0] = pz[0] = 1.0;
  for (int p = 1; p < n; ++p) {
    px[p] = px[p - 1] * u.x();
    py[p] = py[p - 1] * u.y();
    pz[p] = pz[p - 1] * u.z();
  }
  double h = 0.0;
  Vec3 g = Vec3::Zero();
  for (const Term& t : terms_) {
    h += t.c * px[t.i] * py[t.j] * pz[t.k];
    if (grad) {
      if (t.i > 0) g.x() += t.c * t.i * px[t.i - 1] * py[t.j] * pz[t.k];
      if (t.j > 0) g.y() += t.c * t.j * px[t.i] * py[t.j - 1] * pz[t.k];
      if (t.k > 0) g.z() += t.c * t.k * px[t.i] * py[t.j] * pz[t.k - 1];
    }
  }
  if (grad) *grad = g;
  return h;
}

double BumpySphereSdf::surface_radius(const Vec3& u) const {
  return radius_ + amplitude_ * scale_ * bump(u.normalized(), nullptr);
}

double BumpySphereSdf::distance(const Vec3& x) const {
  const double r = x.norm();
  if (r == 0.0) return -radius_;
  return r - radius_ - amplitude_ * scale_ * bump(x / r, nullptr);
}

Vec3 BumpySphereSdf::gradient(const Vec3& x) const {
  const double r = x.norm();
  if (r == 0.0) return Vec3::Zero();
  const Vec3 u = x / r;
  Vec3 gu;
  bump(u, &gu);
  const Vec3 tangential = (gu - u * u.dot(gu)) / r;
  return u - amplitude_ * scale_ * tangential;
}

// --- occupancy --------------------------------------------------------------

SdfOccupancyField::SdfOccupancyField(std::shared_ptr<const SignedDistance> sdf, double width,
                                     Aabb bounds)
    : sdf_(std::move(sdf)), width_(width), bounds_(bounds) {
  if (!sdf_) throw Error("occupancy field needs a signed distance");
  if (!(width_ > 0.0)) throw Error(fmt::format("occupancy width must be positive, got {}", width_));
}

double SdfOccupancyField::eval(const Vec3& x) const {
  if (!bounds_.contains(x)) return 0.0;
  return logistic(-sdf_->distance(x) / width_);
}

FieldSample SdfOccupancyField::eval_grad(const Vec3& x) const {
  if (!bounds_.contains(x)) return {};
  const double s = logistic(-sdf_->distance(x) / width_);
  return {s, -(s * (1.0 - s) / width_) * sdf_->gradient(x)};
}

ConstantField::ConstantField(double value, Aabb bounds) : value_(value), bounds_(bounds) {
  if (!(value >= 0.0 && value <= 1.0)) throw Error("constant occupancy must lie in [0, 1]");
}

double ConstantField::eval(const Vec3& x) const { return bounds_.contains(x) ? value_ : 0.0; }

FieldSample ConstantField::eval_grad(const Vec3& x) const { return {eval(x), Vec3::Zero()}; }

}  // namespace topofit
