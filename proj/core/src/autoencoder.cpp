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

#include "topofit/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include <fmt/core.h>

#include "topofit/adam.hpp"
#include "topofit/metrics.hpp"
#include "topofit/parallel.hpp"
#include "topofit/sampling.hpp"

namespace topofit {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

Eigen::VectorXd flatten(const Features& x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
}

Features unflatten(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Features>(v.data(), rows, cols);
}

}  // namespace

void AutoencoderConfig::validate() const {
  if (channels < 1 || bottleneck_channels < 1 || latent < 1) {
    throw Error(fmt::format("autoencoder widths must be positive (channels {}, bottleneck {}, latent {})",
                            channels, bottleneck_channels, latent));
  }
  if (blocks < 1) throw Error(fmt::format("block count {} must be >= 1", blocks));
  if (order < 0) throw Error(fmt::format("Chebyshev order {} must be >= 0", order));
  if (!(slope >= 0.0 && slope < 1.0)) throw Error(fmt::format("leaky slope {} outside [0, 1)", slope));
}

MeshAutoencoder::MeshAutoencoder(const Mesh& topology, AutoencoderConfig config)
    : topology_(topology), config_(config), laplacian_(build_scaled_laplacian(topology)) {
  config_.validate();
  const int n = static_cast<int>(topology.vertex_count());
  const int c = config_.channels;
  int width = 3;
  for (int b = 0; b < config_.blocks; ++b) {
    Block block;
    block.conv1 = add_cheb(fmt::format("encoder.block{}.conv1", b), width, c, config_.order);
    block.conv2 = add_cheb(fmt::format("encoder.block{}.conv2", b), c, c, config_.order);
    block.skip = width == c ? kNone : add_cheb(fmt::format("encoder.block{}.skip", b), width, c, 0);
    encoder_.push_back(block);
    width = c;
  }
  bottleneck_ = add_cheb("encoder.bottleneck", c, config_.bottleneck_channels, 1);
  encode_fc_ = add_dense("encoder.fc", n * config_.bottleneck_channels, config_.latent);
  decode_fc_ = add_dense("decoder.fc", config_.latent, n * c);
  for (int b = 0; b < config_.blocks; ++b) {
    Block block;
    block.conv1 = add_cheb(fmt::format("decoder.block{}.conv1", b), c, c, config_.order);
    block.conv2 = add_cheb(fmt::format("decoder.block{}.conv2", b), c, c, config_.order);
    block.skip = kNone;
    decoder_.push_back(block);
  }
  output_ = add_cheb("decoder.output", c, 3, 1);

  std::size_t total = 0;
  for (LayerSpec& spec : layers_) {
    spec.offset = total;
    total += spec.count;
  }
  params_.assign(total, 0.0);
  std::mt19937_64 rng(config_.seed);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const std::span<double> p = view(std::span<double>(params_), i);
    if (layers_[i].kind == LayerSpec::Kind::Dense) {
      dense(i).initialize(p, rng);
    } else {
      // Damp the second convolution of each block so the stack starts close
      // to its skip path.
      const bool second = layers_[i].name.ends_with("conv2");
      cheb(i).initialize(p, rng, second ? 0.25 : 1.0);
    }
  }
}

std::size_t MeshAutoencoder::add_cheb(const std::string& name, int in, int out, int order) {
  LayerSpec spec;
  spec.name = name;
  spec.kind = LayerSpec::Kind::Chebyshev;
  spec.in = in;
  spec.out = out;
  spec.order = order;
  spec.count = ChebConv(in, out, order).parameter_count();
  layers_.push_back(spec);
  return layers_.size() - 1;
}

std::size_t MeshAutoencoder::add_dense(const std::string& name, int in, int out) {
  LayerSpec spec;
  spec.name = name;
  spec.kind = LayerSpec::Kind::Dense;
  spec.in = in;
  spec.out = out;
  spec.count = Linear(in, out).parameter_count();
  layers_.push_back(spec);
  return layers_.size() - 1;
}

ChebConv MeshAutoencoder::cheb(std::size_t layer) const {
  const LayerSpec& s = layers_[layer];
  return ChebConv(s.in, s.out, s.order);
}

Linear MeshAutoencoder::dense(std::size_t layer) const {
  const LayerSpec& s = layers_[layer];
  return Linear(s.in, s.out);
}

std::span<const double> MeshAutoencoder::view(std::size_t layer) const {
  return std::span<const double>(params_).subspan(layers_[layer].offset, layers_[layer].count);
}

std::span<double> MeshAutoencoder::view(std::span<double> buffer, std::size_t layer) const {
  return buffer.subspan(layers_[layer].offset, layers_[layer].count);
}

Features MeshAutoencoder::block_forward(const Block& b, const Features& x, BlockTape* tape) const {
  const SparseMatrix& l = laplacian_.matrix;
  const double slope = config_.slope;
  BlockTape local;
  BlockTape& t = tape ? *tape : local;
  t.h1 = cheb(b.conv1).forward(view(b.conv1), l, x, &t.c1);
  const Features a1 = leaky_relu(t.h1, slope);
  t.h2 = cheb(b.conv2).forward(view(b.conv2), l, a1, &t.c2);
  Features y = leaky_relu(t.h2, slope);
  if (b.skip == kNone) {
    y += x;
  } else {
    y += cheb(b.skip).forward(view(b.skip), l, x, &t.skip);
  }
  return y;
}

Features MeshAutoencoder::block_backward(const Block& b, const BlockTape& t, const Features& dy,
                                         std::span<double> grad) const {
  const SparseMatrix& l = laplacian_.matrix;
  const double slope = config_.slope;
  const Features dh2 = leaky_relu_backward(t.h2, dy, slope);
  const Features da1 = cheb(b.conv2).backward(view(b.conv2), l, t.c2, dh2, view(grad, b.conv2));
  const Features dh1 = leaky_relu_backward(t.h1, da1, slope);
  Features dx = cheb(b.conv1).backward(view(b.conv1), l, t.c1, dh1, view(grad, b.conv1));
  if (b.skip == kNone) {
    dx += dy;
  } else {
    dx += cheb(b.skip).backward(view(b.skip), l, t.skip, dy, view(grad, b.skip));
  }
  return dx;
}

Eigen::VectorXd MeshAutoencoder::encode(const Features& x, Tape* tape) const {
  if (x.rows() != static_cast<Eigen::Index>(topology_.vertex_count()) || x.cols() != 3) {
    throw Error(fmt::format("autoencoder expects {}x3 input, got {}x{}", topology_.vertex_count(),
                            x.rows(), x.cols()));
  }
  Features h = x;
  if (tape) tape->encoder.resize(encoder_.size());
  for (std::size_t b = 0; b < encoder_.size(); ++b) {
    h = block_forward(encoder_[b], h, tape ? &tape->encoder[b] : nullptr);
  }
  ChebCache cache;
  Features pre = cheb(bottleneck_).forward(view(bottleneck_), laplacian_.matrix, h, &cache);
  const Eigen::VectorXd flat = flatten(leaky_relu(pre, config_.slope));
  Eigen::VectorXd latent = dense(encode_fc_).forward(view(encode_fc_), flat);
  if (tape) {
    tape->bottleneck_cache = std::move(cache);
    tape->bottleneck_pre = std::move(pre);
    tape->flat = flat;
    tape->latent = latent;
  }
  return latent;
}

Features MeshAutoencoder::decode(const Eigen::VectorXd& latent, Tape* tape) const {
  const auto n = static_cast<Eigen::Index>(topology_.vertex_count());
  Eigen::VectorXd pre = dense(decode_fc_).forward(view(decode_fc_), latent);
  Features h = leaky_relu(unflatten(pre, n, config_.channels), config_.slope);
  if (tape) {
    tape->latent = latent;
    tape->expand_pre = std::move(pre);
    tape->decoder.resize(decoder_.size());
  }
  for (std::size_t b = 0; b < decoder_.size(); ++b) {
    h = block_forward(decoder_[b], h, tape ? &tape->decoder[b] : nullptr);
  }
  return cheb(output_).forward(view(output_), laplacian_.matrix, h, tape ? &tape->output_cache : nullptr);
}

Features MeshAutoencoder::forward(const Features& x, Tape* tape) const {
  return decode(encode(x, tape), tape);
}

void MeshAutoencoder::backward(const Tape& tape, const Features& d_output, std::span<double> grad) const {
  if (grad.size() != params_.size()) {
    throw Error(fmt::format("gradient buffer has {} entries, model has {}", grad.size(), params_.size()));
  }
  const SparseMatrix& l = laplacian_.matrix;
  const auto n = static_cast<Eigen::Index>(topology_.vertex_count());
  Features d = cheb(output_).backward(view(output_), l, tape.output_cache, d_output, view(grad, output_));
  for (std::size_t b = decoder_.size(); b-- > 0;) {
    d = block_backward(decoder_[b], tape.decoder[b], d, grad);
  }
  const Features d_pre =
      leaky_relu_backward(unflatten(tape.expand_pre, n, config_.channels), d, config_.slope);
  const Eigen::VectorXd d_latent =
      dense(decode_fc_).backward(view(decode_fc_), tape.latent, flatten(d_pre), view(grad, decode_fc_));
  const Eigen::VectorXd d_flat =
      dense(encode_fc_).backward(view(encode_fc_), tape.flat, d_latent, view(grad, encode_fc_));
  const Features d_bottleneck = leaky_relu_backward(
      tape.bottleneck_pre, unflatten(d_flat, n, config_.bottleneck_channels), config_.slope);
  d = cheb(bottleneck_).backward(view(bottleneck_), l, tape.bottleneck_cache, d_bottleneck,
                                 view(grad, bottleneck_));
  for (std::size_t b = encoder_.size(); b-- > 0;) {
    d = block_backward(encoder_[b], tape.encoder[b], d, grad);
  }
}

Mesh MeshAutoencoder::reconstruct(const Mesh& mesh) const {
  const Features out = forward(mesh_features(mesh));
  Mesh result;
  result.faces = topology_.faces;
  result.vertices.resize(static_cast<std::size_t>(out.rows()));
  for (Eigen::Index i = 0; i < out.rows(); ++i) result.vertices[static_cast<std::size_t>(i)] = out.row(i).transpose();
  return result;
}

void MeshAutoencoder::zero_output_layer() {
  const std::span<double> p = view(std::span<double>(params_), output_);
  std::fill(p.begin(), p.end(), 0.0);
}

Features mesh_features(const Mesh& mesh) {
  Features x(static_cast<Eigen::Index>(mesh.vertex_count()), 3);
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = mesh.vertices[i].transpose();
  }
  return x;
}

void TrainConfig::validate() const {
  if (epochs < 0) throw Error(fmt::format("epoch count {} must be >= 0", epochs));
  if (batch_size < 1) throw Error(fmt::format("batch size {} must be >= 1", batch_size));
  if (!(final_lr_fraction > 0.0 && final_lr_fraction <= 1.0)) {
    throw Error(fmt::format("final learning-rate fraction {} must lie in (0, 1]", final_lr_fraction));
  }
  weights.validate();
}

namespace {

struct SampleResult {
  double loss = 0.0;
  double mpvpe = 0.0;
};

std::vector<Vec3> to_vertices(const Features& out) {
  std::vector<Vec3> v(static_cast<std::size_t>(out.rows()));
  for (Eigen::Index i = 0; i < out.rows(); ++i) v[static_cast<std::size_t>(i)] = out.row(i).transpose();
  return v;
}

double mean_vertex_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]).norm();
  return sum / static_cast<double>(a.size());
}

void check_dataset(const MeshAutoencoder& model, const std::vector<Mesh>& dataset) {
  if (dataset.empty()) throw Error("empty training dataset");
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset[i].faces != model.topology().faces ||
        dataset[i].vertex_count() != model.topology().vertex_count()) {
      throw Error(fmt::format("dataset mesh {} does not share the template topology", i));
    }
  }
}

}  // namespace

DatasetEvaluation evaluate_autoencoder(const MeshAutoencoder& model, const std::vector<Mesh>& dataset,
                                       const MeshLossWeights& weights) {
  check_dataset(model, dataset);
  std::vector<SampleResult> results(dataset.size());
  parallel_for(dataset.size(), [&](std::size_t i) {
    const std::vector<Vec3> out = to_vertices(model.forward(mesh_features(dataset[i])));
    results[i].loss = mesh_recovery_loss(out, dataset[i], weights, false).total;
    results[i].mpvpe = mean_vertex_distance(out, dataset[i].vertices);
  });
  DatasetEvaluation eval;
  for (const SampleResult& r : results) {
    eval.loss += r.loss;
    eval.mpvpe += r.mpvpe;
  }
  eval.loss /= static_cast<double>(dataset.size());
  eval.mpvpe /= static_cast<double>(dataset.size());
  return eval;
}

TrainTrace train_autoencoder(MeshAutoencoder& model, const std::vector<Mesh>& dataset,
                             const TrainConfig& config) {
  config.validate();
  check_dataset(model, dataset);
  AdamConfig adam_config;
  adam_config.learning_rate = config.learning_rate;
  adam_config.weight_decay = config.weight_decay;
  Adam adam(model.parameter_count(), adam_config);

  TrainTrace trace;
  trace.initial = evaluate_autoencoder(model, dataset, config.weights);
  const std::size_t p = model.parameter_count();
  const std::size_t batch = static_cast<std::size_t>(config.batch_size);
  std::vector<std::size_t> order(dataset.size());
  std::vector<std::vector<double>> sample_grads(batch, std::vector<double>(p));
  std::vector<SampleResult> sample_results(batch);
  std::vector<double> grad(p);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto rng = item_stream(config.seed, static_cast<std::uint64_t>(epoch));
    std::shuffle(order.begin(), order.end(), rng);

    if (config.epochs > 1) {
      const double phase = static_cast<double>(epoch) / static_cast<double>(config.epochs - 1);
      const double scale = config.final_lr_fraction +
                           (1.0 - config.final_lr_fraction) * 0.5 * (1.0 + std::cos(std::numbers::pi * phase));
      adam.set_learning_rate(config.learning_rate * scale);
    }

    EpochStats stats;
    stats.epoch = epoch;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t count = std::min(batch, order.size() - start);
      parallel_for(count, [&](std::size_t k) {
        const Mesh& target = dataset[order[start + k]];
        MeshAutoencoder::Tape tape;
        const Features out = model.forward(mesh_features(target), &tape);
        const std::vector<Vec3> verts = to_vertices(out);
        const MeshLoss loss = mesh_recovery_loss(verts, target, config.weights, true);
        Features d_out(out.rows(), 3);
        for (std::size_t i = 0; i < verts.size(); ++i) {
          d_out.row(static_cast<Eigen::Index>(i)) = loss.gradient[i].transpose();
        }
        std::fill(sample_grads[k].begin(), sample_grads[k].end(), 0.0);
        model.backward(tape, d_out, sample_grads[k]);
        sample_results[k] = {loss.total, mean_vertex_distance(verts, target.vertices)};
      });
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_loss = 0.0;
      for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t j = 0; j < p; ++j) grad[j] += sample_grads[k][j];
        batch_loss += sample_results[k].loss;
        stats.loss += sample_results[k].loss;
        stats.mpvpe += sample_results[k].mpvpe;
      }
      if (!std::isfinite(batch_loss)) {
        throw Error(fmt::format("training diverged at epoch {} (non-finite loss)", epoch));
      }
      const double inv = 1.0 / static_cast<double>(count);
      for (double& g : grad) g *= inv;
      adam.step(model.parameters(), grad);
    }
    stats.loss /= static_cast<double>(dataset.size());
    stats.mpvpe /= static_cast<double>(dataset.size());
    trace.epochs.push_back(stats);
  }
  trace.final = evaluate_autoencoder(model, dataset, config.weights);
  if (!std::isfinite(trace.final.loss)) {
    throw Error(fmt::format("training diverged at epoch {} (non-finite loss)", config.epochs));
  }
  return trace;
}

double mean_deviation(const std::vector<Mesh>& dataset, const Mesh& reference) {
  if (dataset.empty()) throw Error("empty dataset");
  double sum = 0.0;
  for (const Mesh& m : dataset) sum += mpvpe(m, reference);
  return sum / static_cast<double>(dataset.size());
}

}  // namespace topofit
