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

#include "topofit/graph_laplacian.hpp"

#include <cmath>

#include <fmt/core.h>

namespace topofit {

EigenEstimate power_iteration(const SparseMatrix& a, const PowerIterationOptions& options) {
  const Eigen::Index n = a.rows();
  EigenEstimate est;
  if (n == 0) return est;
  // Fixed, non-symmetric start vector so runs are reproducible and the start
  // is not orthogonal to the dominant eigenvector of a regular graph.
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 2.0 * static_cast<double>(i));
  v.normalize();
  double previous = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd w = a * v;
    const double lambda = v.dot(w);
    est.value = lambda;
    est.iterations = it;
    if (it > 1 && std::abs(lambda - previous) <= options.tolerance * std::abs(lambda)) {
      est.converged = true;
      return est;
    }
    previous = lambda;
    const double norm = w.norm();
    if (norm == 0.0) return est;
    v = w / norm;
  }
  return est;
}

ScaledGraphLaplacian build_scaled_laplacian(std::size_t vertex_count, const std::vector<Edge>& edges,
                                            const PowerIterationOptions& options) {
  std::vector<double> degree(vertex_count, 0.0);
  for (const Edge& e : edges) {
    if (e.a < 0 || e.b < 0 || static_cast<std::size_t>(e.a) >= vertex_count ||
        static_cast<std::size_t>(e.b) >= vertex_count || e.a == e.b) {
      throw Error(fmt::format("invalid edge ({}, {}) for {} vertices", e.a, e.b, vertex_count));
    }
    degree[static_cast<std::size_t>(e.a)] += 1.0;
    degree[static_cast<std::size_t>(e.b)] += 1.0;
  }
  for (std::size_t i = 0; i < vertex_count; ++i) {
    if (degree[i] == 0.0) throw Error(fmt::format("vertex {} is isolated", i));
  }

  std::vector<Eigen::Triplet<double>> lsym;
  lsym.reserve(vertex_count + 2 * edges.size());
  for (std::size_t i = 0; i < vertex_count; ++i) {
    lsym.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
  }
  for (const Edge& e : edges) {
    const double w = -1.0 / std::sqrt(degree[static_cast<std::size_t>(e.a)] *
                                      degree[static_cast<std::size_t>(e.b)]);
    lsym.emplace_back(e.a, e.b, w);
    lsym.emplace_back(e.b, e.a, w);
  }
  SparseMatrix l(static_cast<Eigen::Index>(vertex_count), static_cast<Eigen::Index>(vertex_count));
  l.setFromTriplets(lsym.begin(), lsym.end());

  ScaledGraphLaplacian out;
  const EigenEstimate est = power_iteration(l, options);
  out.iterations = est.iterations;
  out.converged = est.converged && est.value > 0.0;
  out.lambda_max = out.converged ? est.value : 2.0;

  SparseMatrix identity(l.rows(), l.cols());
  identity.setIdentity();
  out.matrix = (2.0 / out.lambda_max) * l - identity;
  out.matrix.makeCompressed();
  return out;
}

ScaledGraphLaplacian build_scaled_laplacian(const Mesh& mesh, const PowerIterationOptions& options) {
  validate(mesh);
  return build_scaled_laplacian(mesh.vertex_count(), unique_edges(mesh), options);
}

}  // namespace topofit
