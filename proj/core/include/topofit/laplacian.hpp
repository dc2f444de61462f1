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

#include <Eigen/SparseCore>

#include "topofit/mesh.hpp"

namespace topofit {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Uniform (degree-normalized) mesh Laplacian: 1 on the diagonal and
/// -1/deg(i) on each neighbour, so every row sums to zero.
struct LaplacianMatrix {
  SparseMatrix matrix;

  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }

  /// Differential coordinates L * V, one per vertex.
  std::vector<Vec3> apply(const std::vector<Vec3>& positions) const;
};

/// Throws naming the first isolated vertex.
LaplacianMatrix build_laplacian(const Mesh& mesh);

}  // namespace topofit
