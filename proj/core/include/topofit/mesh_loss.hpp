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

#include <vector>

#include "topofit/mesh.hpp"

namespace topofit {

struct MeshLossWeights {
  double vertex = 10.0;
  double edge = 40.0;
  double normal = 0.5;

  void validate() const;
};

/// Weighted terms and the gradient with respect to the predicted vertices.
struct MeshLoss {
  double total = 0.0;
  double vertex = 0.0;
  double edge = 0.0;
  double normal = 0.0;
  std::vector<Vec3> gradient;
};

/// Mesh recovery loss between a prediction and a target sharing one face
/// list:
///   vertex: sum_i |V_i - V*_i|_1
///   edge:   sum_faces sum_(i<j) | |V_i - V_j| - |V*_i - V*_j| |
///   normal: sum_faces sum_(i<j) | <(V_i - V_j) / |V_i - V_j|, n*_f> |
/// Face sums visit each face's three vertex pairs, so an interior edge is
/// counted once per incident face. Absolute values use subgradient 0 at 0.
/// Throws on a topology mismatch or a zero-length predicted edge.
MeshLoss mesh_recovery_loss(const std::vector<Vec3>& predicted, const Mesh& target,
                            const MeshLossWeights& weights = {}, bool with_gradient = true);
MeshLoss mesh_recovery_loss(const Mesh& predicted, const Mesh& target,
                            const MeshLossWeights& weights = {}, bool with_gradient = true);

}  // namespace topofit
