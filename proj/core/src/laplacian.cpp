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

#include "topofit/laplacian.hpp"

#include <fmt/core.h>

namespace topofit {

LaplacianMatrix build_laplacian(const Mesh& mesh) {
  validate(mesh);
  const auto nbrs = vertex_neighbors(mesh);
  const auto n = static_cast<Eigen::Index>(mesh.vertices.size());

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.vertices.size() * 7);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& ring = nbrs[static_cast<std::size_t>(i)];
    if (ring.empty()) throw Error(fmt::format("vertex {} is isolated", i));
    const double w = -1.0 / static_cast<double>(ring.size());
    triplets.emplace_back(i, i, 1.0);
    for (int j : ring) triplets.emplace_back(i, j, w);
  }
  LaplacianMatrix lap;
  lap.matrix.resize(n, n);
  lap.matrix.setFromTriplets(triplets.begin(), triplets.end());
  lap.matrix.makeCompressed();
  return lap;
}

std::vector<Vec3> LaplacianMatrix::apply(const std::vector<Vec3>& positions) const {
  std::vector<Vec3> out(positions.size(), Vec3::Zero());
  for (Eigen::Index r = 0; r < matrix.outerSize(); ++r) {
    Vec3 acc = Vec3::Zero();
    for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) {
      acc += it.value() * positions[static_cast<std::size_t>(it.col())];
    }
    out[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

}  // namespace topofit
