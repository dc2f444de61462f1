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

#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "topofit/laplacian.hpp"

namespace topofit {

/// Per-vertex features, one row per vertex, one column per channel.
using Features = Eigen::MatrixXd;

/// Chebyshev basis T_k(L~) X for k = 0..K, kept for the backward pass.
struct ChebCache {
  std::vector<Features> basis;
};

/// Spectral graph convolution Y = sum_k T_k(L~) X W_k + b.
///
/// The layer owns no storage. Parameters live in a caller-provided flat
/// buffer laid out as W_0 .. W_K (each in x out, column-major) followed by
/// the bias (out). Gradients use the same layout. L~ must be symmetric.
class ChebConv {
 public:
  ChebConv(int in_channels, int out_channels, int order);

  int in_channels() const { return in_; }
  int out_channels() const { return out_; }
  int order() const { return order_; }
  std::size_t parameter_count() const;

  /// Glorot-uniform weights, zero bias.
  void initialize(std::span<double> params, std::mt19937_64& rng, double gain = 1.0) const;

  Features forward(std::span<const double> params, const SparseMatrix& laplacian, const Features& x,
                   ChebCache* cache = nullptr) const;

  /// Accumulates dL/dparams into `grad` and returns dL/dX.
  Features backward(std::span<const double> params, const SparseMatrix& laplacian,
                    const ChebCache& cache, const Features& dy, std::span<double> grad) const;

 private:
  void check_params(std::size_t size) const;

  int in_;
  int out_;
  int order_;
};

/// Fully connected map y = W x + b; parameters W (out x in, column-major)
/// then b (out).
class Linear {
 public:
  Linear(int in_features, int out_features);

  int in_features() const { return in_; }
  int out_features() const { return out_; }
  std::size_t parameter_count() const;
  void initialize(std::span<double> params, std::mt19937_64& rng) const;
  Eigen::VectorXd forward(std::span<const double> params, const Eigen::VectorXd& x) const;
  Eigen::VectorXd backward(std::span<const double> params, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& dy, std::span<double> grad) const;

 private:
  int in_;
  int out_;
};

Features leaky_relu(const Features& x, double slope);
/// dL/dx given the pre-activation x and dL/dy.
Features leaky_relu_backward(const Features& x, const Features& dy, double slope);

}  // namespace topofit
