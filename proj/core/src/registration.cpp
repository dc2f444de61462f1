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

#include "topofit/registration.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <fmt/core.h>

#include "topofit/marching_cubes.hpp"
#include "topofit/parallel.hpp"

namespace topofit {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kIsoBand = 1e-12;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool finite(const LossBreakdown& l) {
  return std::isfinite(l.total) && std::isfinite(l.data) && std::isfinite(l.laplacian) &&
         std::isfinite(l.norm);
}

}  // namespace

std::string to_string(RegularizerScale scale) {
  return scale == RegularizerScale::PerVertex ? "per-vertex" : "sum";
}

RegularizerScale regularizer_scale_from_string(const std::string& name) {
  if (name == "per-vertex") return RegularizerScale::PerVertex;
  if (name == "sum") return RegularizerScale::Sum;
  throw Error(fmt::format("unknown regularizer scale '{}' (expected per-vertex or sum)", name));
}

void RegistrationConfig::validate(std::size_t vertex_count) const {
  if (!(lambda_sdf >= 0.0)) throw Error(fmt::format("lambda_sdf {} must be >= 0", lambda_sdf));
  if (!(lambda_lap >= 0.0)) throw Error(fmt::format("lambda_lap {} must be >= 0", lambda_lap));
  if (!(lambda_norm >= 0.0)) throw Error(fmt::format("lambda_norm {} must be >= 0", lambda_norm));
  if (!(sigma > 0.0 && sigma < 1.0)) throw Error(fmt::format("sigma {} outside (0, 1)", sigma));
  if (iterations < 1) throw Error(fmt::format("iterations {} must be >= 1", iterations));
  if (!(tolerance >= 0.0)) throw Error(fmt::format("tolerance {} must be >= 0", tolerance));
  adam.validate();
  if (mask && mask->size() != vertex_count) {
    throw Error(fmt::format("mask has {} entries for a mesh with {} vertices", mask->size(),
                            vertex_count));
  }
}

RegistrationObjective::RegistrationObjective(const Mesh& mesh, const Camera& camera,
                                             const RegistrationConfig& config)
    : vertices_(mesh.vertices),
      rotation_(camera.rotation),
      laplacian_(build_laplacian(mesh)),
      config_(config),
      dims_(config.free_xyz ? 3 : 1) {
  validate(mesh);
  camera.validate();
  config.validate(mesh.vertex_count());
  laplacian_t_ = laplacian_.matrix.transpose();
  const std::size_t n = vertices_.size();
  active_.assign(n, 1);
  if (config.mask) active_ = config.mask->flags();
  frozen_.assign(n * dims_, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (active_[i]) {
      ++optimizable_;
    } else {
      for (std::size_t d = 0; d < dims_; ++d) frozen_[i * dims_ + d] = 1;
    }
  }
  if (optimizable_ == 0) throw Error("the vertex mask leaves no optimizable vertex");
}

std::vector<Vec3> RegistrationObjective::camera_offsets(std::span<const double> params) const {
  if (params.size() != parameter_count()) {
    throw Error(fmt::format("expected {} parameters, got {}", parameter_count(), params.size()));
  }
  std::vector<Vec3> out(vertices_.size(), Vec3::Zero());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (dims_ == 1) {
      out[i].z() = params[i];
    } else {
      out[i] = Vec3(params[3 * i], params[3 * i + 1], params[3 * i + 2]);
    }
  }
  return out;
}

std::vector<Vec3> RegistrationObjective::world_offsets(std::span<const double> params) const {
  std::vector<Vec3> out = camera_offsets(params);
  const Mat3 rt = rotation_.transpose();
  for (Vec3& o : out) o = rt * o;
  return out;
}

std::vector<Vec3> RegistrationObjective::positions(std::span<const double> params) const {
  const std::vector<Vec3> offsets = world_offsets(params);
  std::vector<Vec3> out = vertices_;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (active_[i]) out[i] += offsets[i];
  }
  return out;
}

LossBreakdown RegistrationObjective::evaluate(std::span<const double> params,
                                              std::vector<double>* grad) const {
  const std::size_t n = vertices_.size();
  const std::vector<Vec3> offsets = world_offsets(params);

  std::vector<double> residual(n, 0.0);
  std::vector<Vec3> data_grad(n, Vec3::Zero());
  parallel_for(n, [&](std::size_t i) {
    if (!active_[i]) return;
    Vec3 g = Vec3::Zero();
    residual[i] = data_term(vertices_[i] + offsets[i], grad ? &g : nullptr);
    data_grad[i] = g;
  });

  LossBreakdown loss;
  double data_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) data_sum += residual[i];
  const double data_weight = config_.lambda_sdf / static_cast<double>(optimizable_);
  loss.data = data_weight * data_sum;

  const double scale = config_.regularizer_scale == RegularizerScale::PerVertex
                           ? 1.0 / static_cast<double>(n)
                           : 1.0;
  Eigen::Matrix<double, Eigen::Dynamic, 3> o(static_cast<Eigen::Index>(n), 3);
  for (std::size_t i = 0; i < n; ++i) o.row(static_cast<Eigen::Index>(i)) = offsets[i].transpose();
  const Eigen::Matrix<double, Eigen::Dynamic, 3> lo = laplacian_.matrix * o;
  loss.laplacian = config_.lambda_lap * scale * lo.squaredNorm();
  loss.norm = config_.lambda_norm * scale * o.squaredNorm();
  loss.total = loss.data + loss.laplacian + loss.norm;

  if (grad) {
    const Eigen::Matrix<double, Eigen::Dynamic, 3> g_reg =
        (2.0 * config_.lambda_lap * scale) * (laplacian_t_ * lo) +
        (2.0 * config_.lambda_norm * scale) * o;
    grad->assign(parameter_count(), 0.0);
    const Vec3 depth = rotation_.row(2).transpose();
    for (std::size_t i = 0; i < n; ++i) {
      if (!active_[i]) continue;
      const Vec3 g = data_weight * data_grad[i] + g_reg.row(static_cast<Eigen::Index>(i)).transpose();
      if (dims_ == 1) {
        (*grad)[i] = g.dot(depth);
      } else {
        const Vec3 gc = rotation_ * g;
        for (int d = 0; d < 3; ++d) (*grad)[3 * i + static_cast<std::size_t>(d)] = gc[d];
      }
    }
  }
  return loss;
}

ImplicitObjective::ImplicitObjective(const Mesh& mesh, const ImplicitField& field,
                                     const Camera& camera, const RegistrationConfig& config)
    : RegistrationObjective(mesh, camera, config), field_(&field), sigma_(config.sigma) {}

double ImplicitObjective::data_term(const Vec3& p, Vec3* grad) const {
  if (!grad) return std::abs(field_->eval(p) - sigma_);
  const FieldSample s = field_->eval_grad(p);
  const double r = s.value - sigma_;
  // Inside the band the point sits on the iso-surface up to evaluation
  // rounding, so it takes the zero subgradient. Adam normalizes step sizes,
  // so a rounding-level sign would otherwise move it by a full step.
  const double sign = r > kIsoBand ? 1.0 : (r < -kIsoBand ? -1.0 : 0.0);
  *grad = sign * s.gradient;
  return std::abs(r);
}

ChamferObjective::ChamferObjective(const Mesh& mesh, const TriangleBvh& target,
                                   const Camera& camera, const RegistrationConfig& config)
    : RegistrationObjective(mesh, camera, config), target_(&target) {}

double ChamferObjective::data_term(const Vec3& p, Vec3* grad) const {
  const ClosestHit hit = target_->closest(p);
  if (grad) *grad = hit.distance > 0.0 ? Vec3((p - hit.point) / hit.distance) : Vec3::Zero();
  return hit.distance;
}

RegistrationResult optimize(const Mesh& mesh, const RegistrationObjective& objective,
                            const RegistrationConfig& config) {
  const auto start = Clock::now();
  RegistrationResult result;
  std::vector<double> params(objective.parameter_count(), 0.0);
  std::vector<double> grad;
  Adam adam(params.size(), config.adam);
  result.trace.reserve(static_cast<std::size_t>(config.iterations));

  double previous = 0.0;
  for (int it = 0; it < config.iterations; ++it) {
    const LossBreakdown loss = objective.evaluate(params, &grad);
    if (!finite(loss)) {
      throw RegistrationError(
          fmt::format("non-finite loss at iteration {} (data {}, laplacian {}, norm {})", it,
                      loss.data, loss.laplacian, loss.norm),
          it, loss);
    }
    if (it == 0) result.initial = loss;
    result.trace.push_back(loss);
    adam.step(params, grad, objective.frozen());
    result.iterations = it + 1;
    if (config.tolerance > 0.0 && it > 0 &&
        std::abs(previous - loss.total) <= config.tolerance * std::max(1.0, std::abs(loss.total))) {
      break;
    }
    previous = loss.total;
  }
  result.final_loss = objective.evaluate(params, nullptr);
  if (!finite(result.final_loss)) {
    throw RegistrationError(fmt::format("non-finite loss after iteration {}", result.iterations),
                            result.iterations, result.final_loss);
  }
  result.mesh.faces = mesh.faces;
  result.mesh.vertices = objective.positions(params);
  result.offsets = objective.camera_offsets(params);
  result.optimization_seconds = seconds_since(start);
  return result;
}

RegistrationResult implicit_register(const Mesh& mesh, const ImplicitField& field,
                                     const Camera& camera, const RegistrationConfig& config) {
  if (config.free_xyz) throw Error("free_xyz applies to the Chamfer baseline only");
  const ImplicitObjective objective(mesh, field, camera, config);
  RegistrationResult result = optimize(mesh, objective, config);
  result.extraction_seconds = 0.0;
  return result;
}

RegistrationResult chamfer_register(const Mesh& mesh, const ImplicitField& field,
                                    const Camera& camera, const RegistrationConfig& config,
                                    GridResolution mc_resolution) {
  const auto start = Clock::now();
  const Mesh surface = marching_cubes(field, mc_resolution, config.sigma, field.bounds());
  if (surface.empty()) throw Error("marching cubes extracted an empty surface; nothing to register to");
  const TriangleBvh bvh(surface);
  const double extraction = seconds_since(start);

  const ChamferObjective objective(mesh, bvh, camera, config);
  RegistrationResult result = optimize(mesh, objective, config);
  result.extraction_seconds = extraction;
  result.extracted_vertices = surface.vertex_count();
  result.extracted_faces = surface.face_count();
  return result;
}

}  // namespace topofit
