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

#include "topofit/mesh_loss.hpp"

#include <cmath>
#include <limits>

#include <fmt/core.h>

namespace topofit {
namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Unit edge against unit normal: anything this small is rounding noise on an
// edge that lies in the target face plane.
constexpr double kDotRoundoff = 16.0 * std::numeric_limits<double>::epsilon();

}  // namespace

void MeshLossWeights::validate() const {
  if (!(vertex >= 0.0 && edge >= 0.0 && normal >= 0.0)) {
    throw Error(fmt::format("mesh loss weights must be >= 0 (got {}, {}, {})", vertex, edge, normal));
  }
}

MeshLoss mesh_recovery_loss(const std::vector<Vec3>& predicted, const Mesh& target,
                            const MeshLossWeights& weights, bool with_gradient) {
  weights.validate();
  if (predicted.size() != target.vertex_count()) {
    throw Error(fmt::format("prediction has {} vertices, target has {}", predicted.size(),
                            target.vertex_count()));
  }
  const std::vector<Vec3> target_normals = face_normals(target);
  MeshLoss loss;
  if (with_gradient) loss.gradient.assign(predicted.size(), Vec3::Zero());

  double vertex_sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const Vec3 d = predicted[i] - target.vertices[i];
    vertex_sum += d.cwiseAbs().sum();
    if (with_gradient) {
      loss.gradient[i] += weights.vertex * Vec3(sign(d.x()), sign(d.y()), sign(d.z()));
    }
  }

  double edge_sum = 0.0, normal_sum = 0.0;
  for (std::size_t f = 0; f < target.faces.size(); ++f) {
    const Face& face = target.faces[f];
    const Vec3& n = target_normals[f];
    for (int p = 0; p < 3; ++p) {
      int i = face[static_cast<std::size_t>(p)], j = face[static_cast<std::size_t>((p + 1) % 3)];
      if (i > j) std::swap(i, j);
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const Vec3 e = predicted[ui] - predicted[uj];
      const double len = e.norm();
      // Non-finite lengths flow into a non-finite loss, which callers report
      // as divergence.
      if (len == 0.0) {
        throw Error(fmt::format("predicted edge ({}, {}) of face {} has zero length", i, j, f));
      }
      const double target_len = (target.vertices[ui] - target.vertices[uj]).norm();
      const double diff = len - target_len;
      edge_sum += std::abs(diff);
      const Vec3 dir = e / len;
      double s = dir.dot(n);
      if (std::abs(s) <= kDotRoundoff) s = 0.0;
      normal_sum += std::abs(s);
      if (with_gradient) {
        const Vec3 g = weights.edge * sign(diff) * dir + weights.normal * sign(s) * (n - s * dir) / len;
        loss.gradient[ui] += g;
        loss.gradient[uj] -= g;
      }
    }
  }

  loss.vertex = weights.vertex * vertex_sum;
  loss.edge = weights.edge * edge_sum;
  loss.normal = weights.normal * normal_sum;
  loss.total = loss.vertex + loss.edge + loss.normal;
  return loss;
}

MeshLoss mesh_recovery_loss(const Mesh& predicted, const Mesh& target, const MeshLossWeights& weights,
                            bool with_gradient) {
  if (predicted.faces != target.faces) {
    throw Error("predicted and target meshes have different face lists");
  }
  return mesh_recovery_loss(predicted.vertices, target, weights, with_gradient);
}

}  // namespace topofit
