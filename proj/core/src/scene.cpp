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

#include "topofit/scene.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/core.h>

#include "topofit/bake.hpp"
#include "topofit/marching_cubes.hpp"
#include "topofit/primitives.hpp"
#include "topofit/sampling.hpp"

namespace topofit {
namespace {

std::shared_ptr<const SignedDistance> make_sdf(const SceneParams& p) {
  switch (p.kind) {
    case SceneKind::Sphere:
      return std::make_shared<SphereSdf>(p.radius);
    case SceneKind::Ellipsoid:
      return std::make_shared<EllipsoidSdf>(p.semi_axes);
    case SceneKind::BumpySphere:
      return std::make_shared<BumpySphereSdf>(p.radius, p.amplitude, p.degree, p.seed);
    case SceneKind::CapsuleChain: {
      // Zig-zag chain of limbs standing in for an articulated body.
      const double r = 0.24 * p.radius;
      std::vector<CapsuleUnionSdf::Capsule> capsules = {
          {Vec3(-0.9, -0.3, 0.0) * p.radius, Vec3(-0.3, 0.3, 0.0) * p.radius, r},
          {Vec3(-0.3, 0.3, 0.0) * p.radius, Vec3(0.3, -0.2, 0.05) * p.radius, r},
          {Vec3(0.3, -0.2, 0.05) * p.radius, Vec3(0.9, 0.4, 0.1) * p.radius, r},
      };
      return std::make_shared<CapsuleUnionSdf>(std::move(capsules));
    }
  }
  throw Error("unhandled scene kind");
}

Aabb scene_box(const SceneParams& p) {
  return {Vec3::Constant(-p.half_extent), Vec3::Constant(p.half_extent)};
}

}  // namespace

std::string to_string(SceneKind kind) {
  switch (kind) {
    case SceneKind::Sphere: return "sphere";
    case SceneKind::Ellipsoid: return "ellipsoid";
    case SceneKind::BumpySphere: return "bumpy-sphere";
    case SceneKind::CapsuleChain: return "capsule-chain";
  }
  return "unknown";
}

SceneKind scene_kind_from_string(const std::string& name) {
  for (SceneKind k : {SceneKind::Sphere, SceneKind::Ellipsoid, SceneKind::BumpySphere,
                      SceneKind::CapsuleChain}) {
    if (to_string(k) == name) return k;
  }
  throw Error(fmt::format(
      "unknown scene kind '{}' (expected sphere, ellipsoid, bumpy-sphere or capsule-chain)", name));
}

void SceneParams::validate() const {
  if (!(radius > 0.0)) throw Error(fmt::format("scene radius {} must be positive", radius));
  if (!(semi_axes.minCoeff() > 0.0)) throw Error("ellipsoid semi-axes must be positive");
  if (!(amplitude >= 0.0 && amplitude < radius)) {
    throw Error(fmt::format("bump amplitude {} must lie in [0, radius)", amplitude));
  }
  if (template_level < 0 || target_level < 0) throw Error("icosphere levels must be >= 0");
  for (int r : grid) {
    if (r < 2) throw Error(fmt::format("grid resolution {} must be >= 2", r));
  }
  if (!(width > 0.0)) throw Error(fmt::format("occupancy width {} must be positive", width));
  const double reach = kind == SceneKind::Ellipsoid ? semi_axes.maxCoeff() : radius + amplitude;
  if (!(half_extent > 1.1 * reach)) {
    throw Error(fmt::format("field half extent {} does not enclose the subject", half_extent));
  }
}

SdfOccupancyField SyntheticScene::occupancy() const {
  return SdfOccupancyField(sdf, params.width, scene_box(params));
}

SyntheticScene generate_scene(const SceneParams& params) {
  params.validate();
  const std::shared_ptr<const SignedDistance> sdf = make_sdf(params);
  const Aabb box = scene_box(params);
  const SdfOccupancyField occupancy(sdf, params.width, box);

  Mesh target, templ;
  switch (params.kind) {
    case SceneKind::Sphere:
      target = icosphere(params.target_level, params.radius);
      templ = icosphere(params.template_level, params.radius);
      break;
    case SceneKind::Ellipsoid:
      target = icosphere(params.target_level, 1.0);
      for (Vec3& v : target.vertices) v = v.cwiseProduct(params.semi_axes);
      templ = icosphere(params.template_level, params.radius);
      break;
    case SceneKind::BumpySphere: {
      const auto& bumpy = static_cast<const BumpySphereSdf&>(*sdf);
      target = icosphere(params.target_level, 1.0);
      for (Vec3& v : target.vertices) v *= bumpy.surface_radius(v);
      templ = icosphere(params.template_level, params.radius);
      break;
    }
    case SceneKind::CapsuleChain: {
      target = marching_cubes(occupancy, params.grid, 0.5, box);
      if (signed_volume(target) < 0.0) throw Error("extracted capsule chain is inside out");
      // Template: the subject shrunk towards its centroid.
      Vec3 c = Vec3::Zero();
      for (const Vec3& v : target.vertices) c += v;
      c /= static_cast<double>(target.vertex_count());
      templ = target;
      for (Vec3& v : templ.vertices) v = c + 0.95 * (v - c);
      break;
    }
  }

  GridField field = params.source == FieldSource::Analytic
                        ? GridField::sample(occupancy, params.grid, box)
                        : bake_field(target, params.grid, box, true);
  return SyntheticScene{params, sdf, std::move(target), std::move(templ), std::move(field),
                        Camera::identity()};
}

Mesh bump_template(const BumpDatasetConfig& config) { return icosphere(config.level, config.radius); }

std::vector<Mesh> make_bump_dataset(const BumpDatasetConfig& config) {
  if (config.count == 0) throw Error("dataset size must be positive");
  if (!(config.bump_width > 0.0)) throw Error("bump width must be positive");
  const Mesh base = bump_template(config);
  // Fixed bump centres: the six axis directions.
  const std::vector<Vec3> centres = {Vec3::UnitX(), -Vec3::UnitX(), Vec3::UnitY(),
                                     -Vec3::UnitY(), Vec3::UnitZ(), -Vec3::UnitZ()};
  std::vector<Mesh> out;
  out.reserve(config.count);
  const double inv_two_var = 1.0 / (2.0 * config.bump_width * config.bump_width);
  for (std::size_t s = 0; s < config.count; ++s) {
    auto rng = item_stream(config.seed, s);
    std::uniform_real_distribution<double> amp(-config.amplitude, config.amplitude);
    std::vector<double> heights(centres.size());
    for (double& h : heights) h = amp(rng);
    Mesh m = base;
    for (Vec3& v : m.vertices) {
      const Vec3 u = v.normalized();
      double disp = 0.0;
      for (std::size_t c = 0; c < centres.size(); ++c) {
        const double angle = std::acos(std::clamp(u.dot(centres[c]), -1.0, 1.0));
        disp += heights[c] * std::exp(-angle * angle * inv_two_var);
      }
      v = (config.radius + disp) * u;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace topofit
