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

#include "topofit/cheb_conv.hpp"

#include <cmath>

#include <fmt/core.h>

namespace topofit {
namespace {

using ConstMatMap = Eigen::Map<const Eigen::MatrixXd>;
using MatMap = Eigen::Map<Eigen::MatrixXd>;

}  // namespace

ChebConv::ChebConv(int in_channels, int out_channels, int order)
    : in_(in_channels), out_(out_channels), order_(order) {
  if (in_ < 1 || out_ < 1) {
    throw Error(fmt::format("invalid channel counts {} -> {}", in_channels, out_channels));
  }
  if (order_ < 0) throw Error(fmt::format("Chebyshev order {} must be >= 0", order));
}

std::size_t ChebConv::parameter_count() const {
  return static_cast<std::size_t>(order_ + 1) * static_cast<std::size_t>(in_) *
             static_cast<std::size_t>(out_) +
         static_cast<std::size_t>(out_);
}

void ChebConv::check_params(std::size_t size) const {
  if (size != parameter_count()) {
    throw Error(fmt::format("Chebyshev layer needs {} parameters, got {}", parameter_count(), size));
  }
}

void ChebConv::initialize(std::span<double> params, std::mt19937_64& rng, double gain) const {
  check_params(params.size());
  const double fan_in = static_cast<double>((order_ + 1) * in_);
  const double limit = gain * std::sqrt(6.0 / (fan_in + static_cast<double>(out_)));
  std::uniform_real_distribution<double> dist(-limit, limit);
  const std::size_t weights = parameter_count() - static_cast<std::size_t>(out_);
  for (std::size_t i = 0; i < weights; ++i) params[i] = dist(rng);
  for (std::size_t i = weights; i < params.size(); ++i) params[i] = 0.0;
}

Features ChebConv::forward(std::span<const double> params, const SparseMatrix& laplacian,
                           const Features& x, ChebCache* cache) const {
  check_params(params.size());
  if (x.cols() != in_) {
    throw Error(fmt::format("Chebyshev layer expects {} input channels, got {}", in_, x.cols()));
  }
  if (order_ > 0 && laplacian.rows() != x.rows()) {
    throw Error(fmt::format("Laplacian of size {} applied to {} vertices", laplacian.rows(), x.rows()));
  }
  const std::size_t block = static_cast<std::size_t>(in_) * static_cast<std::size_t>(out_);
  std::vector<Features> basis;
  basis.reserve(static_cast<std::size_t>(order_ + 1));
  basis.push_back(x);
  if (order_ >= 1) basis.push_back(laplacian * x);
  for (int k = 2; k <= order_; ++k) {
    basis.push_back(2.0 * (laplacian * basis[static_cast<std::size_t>(k - 1)]) -
                    basis[static_cast<std::size_t>(k - 2)]);
  }
  Features y(x.rows(), out_);
  y.setZero();
  for (int k = 0; k <= order_; ++k) {
    const ConstMatMap w(params.data() + static_cast<std::size_t>(k) * block, in_, out_);
    y.noalias() += basis[static_cast<std::size_t>(k)] * w;
  }
  const Eigen::Map<const Eigen::RowVectorXd> bias(
      params.data() + static_cast<std::size_t>(order_ + 1) * block, out_);
  y.rowwise() += bias;
  if (cache) cache->basis = std::move(basis);
  return y;
}

Features ChebConv::backward(std::span<const double> params, const SparseMatrix& laplacian,
                            const ChebCache& cache, const Features& dy,
                            std::span<double> grad) const {
  check_params(params.size());
  check_params(grad.size());
  if (cache.basis.size() != static_cast<std::size_t>(order_ + 1)) {
    throw Error("Chebyshev cache does not match the layer order");
  }
  if (dy.cols() != out_ || dy.rows() != cache.basis[0].rows()) {
    throw Error(fmt::format("output gradient has shape {}x{}, expected {}x{}", dy.rows(), dy.cols(),
                            cache.basis[0].rows(), out_));
  }
  const std::size_t block = static_cast<std::size_t>(in_) * static_cast<std::size_t>(out_);
  std::vector<Features> u(static_cast<std::size_t>(order_ + 1));
  for (int k = 0; k <= order_; ++k) {
    const std::size_t off = static_cast<std::size_t>(k) * block;
    MatMap gw(grad.data() + off, in_, out_);
    gw.noalias() += cache.basis[static_cast<std::size_t>(k)].transpose() * dy;
    const ConstMatMap w(params.data() + off, in_, out_);
    u[static_cast<std::size_t>(k)] = dy * w.transpose();
  }
  Eigen::Map<Eigen::RowVectorXd> gb(grad.data() + static_cast<std::size_t>(order_ + 1) * block, out_);
  gb += dy.colwise().sum();

  // dX = sum_k T_k(L~) U_k, evaluated with Clenshaw's recurrence.
  if (order_ == 0) return u[0];
  Features b1 = u[static_cast<std::size_t>(order_)];
  Features b2 = Features::Zero(b1.rows(), b1.cols());
  for (int k = order_ - 1; k >= 1; --k) {
    Features b0 = u[static_cast<std::size_t>(k)] + 2.0 * (laplacian * b1) - b2;
    b2 = std::move(b1);
    b1 = std::move(b0);
  }
  return u[0] + laplacian * b1 - b2;
}

Linear::Linear(int in_features, int out_features) : in_(in_features), out_(out_features) {
  if (in_ < 1 || out_ < 1) {
    throw Error(fmt::format("invalid linear shape {} -> {}", in_features, out_features));
  }
}

std::size_t Linear::parameter_count() const {
  return static_cast<std::size_t>(in_) * static_cast<std::size_t>(out_) + static_cast<std::size_t>(out_);
}

void Linear::initialize(std::span<double> params, std::mt19937_64& rng) const {
  if (params.size() != parameter_count()) throw Error("linear parameter buffer has the wrong size");
  const double limit = std::sqrt(6.0 / static_cast<double>(in_ + out_));
  std::uniform_real_distribution<double> dist(-limit, limit);
  const std::size_t weights = static_cast<std::size_t>(in_) * static_cast<std::size_t>(out_);
  for (std::size_t i = 0; i < weights; ++i) params[i] = dist(rng);
  for (std::size_t i = weights; i < params.size(); ++i) params[i] = 0.0;
}

Eigen::VectorXd Linear::forward(std::span<const double> params, const Eigen::VectorXd& x) const {
  if (params.size() != parameter_count()) throw Error("linear parameter buffer has the wrong size");
  if (x.size() != in_) {
    throw Error(fmt::format("linear layer expects {} inputs, got {}", in_, x.size()));
  }
  const ConstMatMap w(params.data(), out_, in_);
  const Eigen::Map<const Eigen::VectorXd> b(params.data() + static_cast<std::size_t>(in_) * out_, out_);
  return w * x + b;
}

Eigen::VectorXd Linear::backward(std::span<const double> params, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& dy, std::span<double> grad) const {
  if (params.size() != parameter_count() || grad.size() != parameter_count()) {
    throw Error("linear parameter buffer has the wrong size");
  }
  const ConstMatMap w(params.data(), out_, in_);
  MatMap gw(grad.data(), out_, in_);
  gw.noalias() += dy * x.transpose();
  Eigen::Map<Eigen::VectorXd> gb(grad.data() + static_cast<std::size_t>(in_) * out_, out_);
  gb += dy;
  return w.transpose() * dy;
}

Features leaky_relu(const Features& x, double slope) {
  return x.unaryExpr([slope](double v) { return v > 0.0 ? v : slope * v; });
}

Features leaky_relu_backward(const Features& x, const Features& dy, double slope) {
  return dy.binaryExpr(x, [slope](double g, double v) { return v > 0.0 ? g : slope * g; });
}

}  // namespace topofit
