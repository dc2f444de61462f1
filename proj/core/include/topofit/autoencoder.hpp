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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "topofit/cheb_conv.hpp"
#include "topofit/graph_laplacian.hpp"
#include "topofit/mesh.hpp"
#include "topofit/mesh_loss.hpp"

namespace topofit {

struct AutoencoderConfig {
  int channels = 32;
  /// Width of the order-1 convolution feeding the latent map.
  int bottleneck_channels = 32;
  int latent = 128;
  int blocks = 8;
  int order = 2;
  double slope = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

/// One parameter block of the model, located in the flat parameter buffer.
struct LayerSpec {
  enum class Kind { Chebyshev, Dense };
  std::string name;
  Kind kind = Kind::Chebyshev;
  int in = 0;
  int out = 0;
  int order = 0;  ///< Chebyshev order, 0 for dense layers
  std::size_t offset = 0;
  std::size_t count = 0;
};

/// Chebyshev graph-convolutional autoencoder over a fixed template topology.
///
/// Encoder: `blocks` residual blocks (two order-K convolutions, each followed
/// by a leaky ReLU, plus a skip that is the identity or an order-0
/// convolution when the width changes), an order-1 convolution with leaky
/// ReLU, and a dense map from the flattened features to the latent code.
/// Decoder: dense map back to per-vertex features with leaky ReLU, the same
/// number of residual blocks, and an order-1 convolution to xyz without
/// activation.
class MeshAutoencoder {
 public:
  MeshAutoencoder(const Mesh& topology, AutoencoderConfig config);

  struct BlockTape {
    ChebCache c1, c2, skip;
    Features h1, h2;
  };
  /// Intermediate values recorded by forward() for backward().
  struct Tape {
    std::vector<BlockTape> encoder;
    ChebCache bottleneck_cache;
    Features bottleneck_pre;
    Eigen::VectorXd flat;
    Eigen::VectorXd latent;
    Eigen::VectorXd expand_pre;
    std::vector<BlockTape> decoder;
    ChebCache output_cache;
  };

  Eigen::VectorXd encode(const Features& x, Tape* tape = nullptr) const;
  Features decode(const Eigen::VectorXd& latent, Tape* tape = nullptr) const;
  Features forward(const Features& x, Tape* tape = nullptr) const;

  /// Accumulates dL/dparams into `grad` given dL/d(output).
  void backward(const Tape& tape, const Features& d_output, std::span<double> grad) const;

  Mesh reconstruct(const Mesh& mesh) const;

  /// Sets the output convolution to zero so the model emits the zero mesh.
  void zero_output_layer();

  std::vector<double>& parameters() { return params_; }
  const std::vector<double>& parameters() const { return params_; }
  std::size_t parameter_count() const { return params_.size(); }
  const std::vector<LayerSpec>& layers() const { return layers_; }
  const AutoencoderConfig& config() const { return config_; }
  const Mesh& topology() const { return topology_; }
  const ScaledGraphLaplacian& laplacian() const { return laplacian_; }

 private:
  struct Block {
    std::size_t conv1, conv2;
    std::size_t skip;  ///< layer index, or npos for an identity skip
  };

  std::size_t add_cheb(const std::string& name, int in, int out, int order);
  std::size_t add_dense(const std::string& name, int in, int out);
  ChebConv cheb(std::size_t layer) const;
  Linear dense(std::size_t layer) const;
  std::span<const double> view(std::size_t layer) const;
  std::span<double> view(std::span<double> buffer, std::size_t layer) const;

  Features block_forward(const Block& b, const Features& x, BlockTape* tape) const;
  Features block_backward(const Block& b, const BlockTape& tape, const Features& dy,
                          std::span<double> grad) const;

  Mesh topology_;
  AutoencoderConfig config_;
  ScaledGraphLaplacian laplacian_;
  std::vector<LayerSpec> layers_;
  std::vector<double> params_;
  std::vector<Block> encoder_, decoder_;
  std::size_t bottleneck_ = 0, encode_fc_ = 0, decode_fc_ = 0, output_ = 0;
};

Features mesh_features(const Mesh& mesh);

struct TrainConfig {
  int epochs = 10;
  double learning_rate = 1e-4;
  double weight_decay = 1e-4;
  int batch_size = 8;
  /// Cosine annealing from learning_rate down to learning_rate * this over
  /// the run. 1 keeps the step size constant.
  double final_lr_fraction = 1.0;
  std::uint64_t seed = 0;
  MeshLossWeights weights;

  void validate() const;
};

struct DatasetEvaluation {
  double loss = 0.0;   ///< mean mesh recovery loss per mesh
  double mpvpe = 0.0;  ///< mean per-vertex position error, model units
};

struct EpochStats {
  int epoch = 0;
  double loss = 0.0;   ///< mean over the epoch's minibatch passes
  double mpvpe = 0.0;
};

struct TrainTrace {
  DatasetEvaluation initial;
  std::vector<EpochStats> epochs;
  DatasetEvaluation final;
};

DatasetEvaluation evaluate_autoencoder(const MeshAutoencoder& model, const std::vector<Mesh>& dataset,
                                       const MeshLossWeights& weights = {});

/// Minibatch Adam on the mesh recovery loss. Per-mesh gradients are
/// computed in parallel and summed in dataset order. Throws naming the epoch
/// if the loss becomes non-finite.
TrainTrace train_autoencoder(MeshAutoencoder& model, const std::vector<Mesh>& dataset,
                             const TrainConfig& config);

/// Mean per-vertex distance of the dataset meshes from `reference`.
double mean_deviation(const std::vector<Mesh>& dataset, const Mesh& reference);

}  // namespace topofit
