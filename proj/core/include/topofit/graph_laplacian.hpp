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

#include "topofit/laplacian.hpp"
#include "topofit/mesh.hpp"

namespace topofit {

/// L~ = 2 L_sym / lambda_max - I with L_sym = I - D^-1/2 A D^-1/2, the
/// rescaling that maps the spectrum of L_sym into [-1, 1].
struct ScaledGraphLaplacian {
  SparseMatrix matrix;
  double lambda_max = 2.0;
  /// False when power iteration missed its tolerance and the bound 2 was
  /// used instead.
  bool converged = false;
  int iterations = 0;

  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
};

struct PowerIterationOptions {
  int max_iterations = 100;
  double tolerance = 1e-9;
};

/// Largest eigenvalue estimate of a symmetric matrix. Converged when the
/// Rayleigh quotient changes by at most tolerance * lambda between steps.
struct EigenEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};
EigenEstimate power_iteration(const SparseMatrix& a, const PowerIterationOptions& options = {});

/// Throws naming any isolated vertex.
ScaledGraphLaplacian build_scaled_laplacian(std::size_t vertex_count, const std::vector<Edge>& edges,
                                            const PowerIterationOptions& options = {});
ScaledGraphLaplacian build_scaled_laplacian(const Mesh& mesh,
                                            const PowerIterationOptions& options = {});

}  // namespace topofit
