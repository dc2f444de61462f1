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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topofit/adam.hpp"
#include "topofit/camera.hpp"
#include "topofit/closest_point.hpp"
#include "topofit/field.hpp"
#include "topofit/grid_field.hpp"
#include "topofit/laplacian.hpp"
#include "topofit/mesh.hpp"

namespace topofit {

/// How the two regularizers are scaled. `PerVertex` divides both by the
/// vertex count, putting them on the same footing as the averaged data term.
/// `Sum` uses the raw squared norms.
enum class RegularizerScale { PerVertex, Sum };

std::string to_string(RegularizerScale scale);
RegularizerScale regularizer_scale_from_string(const std::string& name);

struct RegistrationConfig {
  double lambda_sdf = 10.0;
  double lambda_lap = 1e4;
  double lambda_norm = 50.0;
  double sigma = 0.5;
  int iterations = 500;
  AdamConfig adam{};
  std::optional<VertexMask> mask;
  RegularizerScale regularizer_scale = RegularizerScale::PerVertex;
  /// Stop once the total loss changes by less than `tolerance` (relative)
  /// between iterations. Zero disables the check.
  double tolerance = 0.0;
  /// Chamfer baseline only: optimize full camera-space offsets instead of
  /// depth offsets.
  bool free_xyz = false;

  void validate(std::size_t vertex_count) const;
};

/// Weighted contributions to the objective.
struct LossBreakdown {
  double total = 0.0;
  double data = 0.0;
  double laplacian = 0.0;
  double norm = 0.0;
};

class RegistrationError : public Error {
 public:
  RegistrationError(const std::string& what, int iteration, LossBreakdown loss)
      : Error(what), iteration_(iteration), loss_(loss) {}
  int iteration() const { return iteration_; }
  const LossBreakdown& loss() const { return loss_; }

 private:
  int iteration_;
  LossBreakdown loss_;
};

struct RegistrationResult {
  Mesh mesh;                   ///< refined vertices, input faces
  std::vector<Vec3> offsets;   ///< camera-space offset per vertex
  LossBreakdown initial;
  LossBreakdown final_loss;
  std::vector<LossBreakdown> trace;  ///< loss before each update
  int iterations = 0;
  double extraction_seconds = 0.0;
  double optimization_seconds = 0.0;
  std::size_t extracted_vertices = 0;
  std::size_t extracted_faces = 0;

  double total_seconds() const { return extraction_seconds + optimization_seconds; }
};

/// Registration objective over per-vertex camera-space offsets. Parameters
/// are one depth offset per vertex, or three camera-space components per
/// vertex when `free_xyz` is set. The world offset of vertex i is the inverse
/// camera rotation applied to its camera-space offset.
class RegistrationObjective {
 public:
  RegistrationObjective(const Mesh& mesh, const Camera& camera, const RegistrationConfig& config);
  virtual ~RegistrationObjective() = default;

  std::size_t parameter_count() const { return dims_ * vertices_.size(); }
  std::size_t dims() const { return dims_; }
  /// 1 for every parameter that must stay fixed.
  const std::vector<std::uint8_t>& frozen() const { return frozen_; }
  std::size_t optimizable_count() const { return optimizable_; }

  /// Objective value, and its gradient when `grad` is non-null.
  LossBreakdown evaluate(std::span<const double> params, std::vector<double>* grad) const;

  std::vector<Vec3> world_offsets(std::span<const double> params) const;
  std::vector<Vec3> camera_offsets(std::span<const double> params) const;
  std::vector<Vec3> positions(std::span<const double> params) const;

 protected:
  /// Per-vertex data residual at world position p and its world gradient.
  virtual double data_term(const Vec3& p, Vec3* grad) const = 0;

 private:
  std::vector<Vec3> vertices_;
  Mat3 rotation_;
  LaplacianMatrix laplacian_;
  SparseMatrix laplacian_t_;
  RegistrationConfig config_;
  std::size_t dims_;
  std::vector<std::uint8_t> frozen_;
  std::vector<std::uint8_t> active_;  // per vertex
  std::size_t optimizable_ = 0;
};

/// |f(p) - sigma| with subgradient 0 at exactly sigma.
class ImplicitObjective final : public RegistrationObjective {
 public:
  ImplicitObjective(const Mesh& mesh, const ImplicitField& field, const Camera& camera,
                    const RegistrationConfig& config);

 protected:
  double data_term(const Vec3& p, Vec3* grad) const override;

 private:
  const ImplicitField* field_;
  double sigma_;
};

/// Exact point-to-surface distance to a target surface, subgradient 0 on
/// the surface.
class ChamferObjective final : public RegistrationObjective {
 public:
  ChamferObjective(const Mesh& mesh, const TriangleBvh& target, const Camera& camera,
                   const RegistrationConfig& config);

 protected:
  double data_term(const Vec3& p, Vec3* grad) const override;

 private:
  const TriangleBvh* target_;
};

/// Runs Adam on `objective` for the configured budget.
RegistrationResult optimize(const Mesh& mesh, const RegistrationObjective& objective,
                            const RegistrationConfig& config);

/// Drives every optimizable vertex onto the sigma level set of `field` by
/// moving it along the camera depth axis. Never extracts a surface.
RegistrationResult implicit_register(const Mesh& mesh, const ImplicitField& field,
                                     const Camera& camera, const RegistrationConfig& config);

/// Baseline: extract the sigma level set with marching cubes over the field
/// bounds, then minimize vertex-to-surface distance with the same
/// regularizer and budget. Throws if the extraction is empty.
RegistrationResult chamfer_register(const Mesh& mesh, const ImplicitField& field,
                                    const Camera& camera, const RegistrationConfig& config,
                                    GridResolution mc_resolution);

}  // namespace topofit
