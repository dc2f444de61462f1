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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "topofit/primitives.hpp"

namespace {

using namespace topofit;

Eigen::MatrixXd dense_normalized_laplacian(std::size_t n, const std::vector<Edge>& edges) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const Edge& e : edges) {
    a(e.a, e.b) = 1.0;
    a(e.b, e.a) = 1.0;
  }
  const Eigen::VectorXd d = a.rowwise().sum().cwiseSqrt().cwiseInverse();
  return Eigen::MatrixXd::Identity(a.rows(), a.cols()) - d.asDiagonal() * a * d.asDiagonal();
}

TEST(GraphLaplacian, MatchesDenseConstruction) {
  // The icosphere spectrum is nearly degenerate at the top, so the default
  // 100-step budget is not enough to converge here.
  const Mesh m = icosphere(2);
  PowerIterationOptions o;
  o.max_iterations = 5000;
  const ScaledGraphLaplacian l = build_scaled_laplacian(m, o);
  ASSERT_TRUE(l.converged);
  const Eigen::MatrixXd sym = dense_normalized_laplacian(m.vertex_count(), unique_edges(m));
  const Eigen::MatrixXd expected =
      2.0 / l.lambda_max * sym - Eigen::MatrixXd::Identity(sym.rows(), sym.cols());
  EXPECT_LT((Eigen::MatrixXd(l.matrix) - expected).cwiseAbs().maxCoeff(), 1e-14);
  const double top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym).eigenvalues().maxCoeff();
  EXPECT_NEAR(l.lambda_max, top, 1e-6 * top);
}

TEST(GraphLaplacian, SpectrumInUnitInterval) {
  for (const Mesh& m : {icosphere(1), icosphere(3), cube(), octahedron()}) {
    const ScaledGraphLaplacian l = build_scaled_laplacian(m);
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Eigen::MatrixXd(l.matrix)).eigenvalues();
    EXPECT_GE(ev.minCoeff(), -1.0 - 1e-9);
    EXPECT_LE(ev.maxCoeff(), 1.0 + 1e-6);
  }
}

TEST(GraphLaplacian, BipartiteGraphHasEigenvalueTwo) {
  // A 4-cycle is bipartite, so L_sym has eigenvalues {0, 1, 1, 2}.
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  const ScaledGraphLaplacian l = build_scaled_laplacian(4, edges);
  EXPECT_NEAR(l.lambda_max, 2.0, 1e-8);
}

TEST(GraphLaplacian, PowerIterationFallsBackToTwo) {
  PowerIterationOptions o;
  o.max_iterations = 1;
  o.tolerance = 1e-15;
  const ScaledGraphLaplacian l = build_scaled_laplacian(icosphere(2), o);
  EXPECT_FALSE(l.converged);
  EXPECT_EQ(l.lambda_max, 2.0);
}

TEST(GraphLaplacian, DefaultBudgetFallsBackOnIcosphere) {
  const ScaledGraphLaplacian l = build_scaled_laplacian(icosphere(2));
  EXPECT_FALSE(l.converged);
  EXPECT_EQ(l.iterations, 100);
  EXPECT_EQ(l.lambda_max, 2.0);
}

TEST(GraphLaplacian, PowerIterationOnDiagonal) {
  SparseMatrix a(3, 3);
  a.insert(0, 0) = 1.0;
  a.insert(1, 1) = 5.0;
  a.insert(2, 2) = 2.0;
  const EigenEstimate e = power_iteration(a, {500, 1e-12});
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.value, 5.0, 1e-9);
}

TEST(GraphLaplacian, IsolatedVertexThrows) {
  EXPECT_THROW(build_scaled_laplacian(3, {{0, 1}}), Error);
}

}  // namespace
