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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "topofit/camera.hpp"
#include "topofit/closest_point.hpp"
#include "topofit/laplacian.hpp"
#include "topofit/mesh.hpp"

namespace topofit {

/// Area-weighted random points on `mesh`, deterministic per seed.
std::vector<Vec3> sample_surface(const Mesh& mesh, std::size_t count, std::uint64_t seed);

/// Mean exact distance from `points` to the surface behind `target`.
double mean_distance(const std::vector<Vec3>& points, const TriangleBvh& target);

/// Mean point-to-surface distance from `count` samples of `source` to
/// `target`, in model units.
double p2s(const Mesh& source, const Mesh& target, std::size_t count, std::uint64_t seed);

/// Average of both one-sided distances; symmetric in its arguments.
double chamfer(const Mesh& a, const Mesh& b, std::size_t count, std::uint64_t seed);

struct NormalErrorOptions {
  int image_size = 512;
  /// Extra views orbit the camera about its vertical axis in equal steps
  /// around the centre of both meshes.
  int views = 1;
};

/// Mean per-pixel L2 difference between rendered normal images over pixels
/// covered in both renders. Throws if no pixel is covered by both.
double normal_projection_error(const Mesh& recon, const Mesh& truth, const Camera& camera,
                               const NormalErrorOptions& options = {});

/// Linear map from vertices to joints; every row sums to 1.
struct JointRegressor {
  std::size_t vertex_count = 0;
  SparseMatrix weights;  // joints x vertices

  std::size_t joint_count() const { return static_cast<std::size_t>(weights.rows()); }
  std::vector<Vec3> apply(const std::vector<Vec3>& vertices) const;
};

/// Parses `joint vertex weight` lines. Weights must be nonnegative and each
/// joint's weights must sum to 1 within 1e-6.
JointRegressor read_regressor(std::istream& in, std::size_t vertex_count,
                              const std::string& source_name = "<stream>");
JointRegressor read_regressor(const std::filesystem::path& path, std::size_t vertex_count);

/// Mean per-vertex position error in model units. With `align_centroids`
/// the second mesh is first translated onto the first one's centroid.
double mpvpe(const Mesh& a, const Mesh& b, bool align_centroids = false);

/// Mean per-joint position error in model units.
double mpjpe(const Mesh& a, const Mesh& b, const JointRegressor& regressor,
             bool align_centroids = false);

struct MetricsOptions {
  std::size_t points = 100000;
  std::uint64_t seed = 0;
  bool align = false;
  NormalErrorOptions normal;
};

/// Values in model units (meters); conversion to cm and mm happens only when
/// formatting.
struct MetricsReport {
  std::size_t points = 0;
  std::uint64_t seed = 0;
  double p2s_recon_to_truth = 0.0;
  double p2s_truth_to_recon = 0.0;
  double chamfer = 0.0;
  std::optional<double> normal_error;
  int normal_image_size = 0;
  int normal_views = 0;
  std::optional<double> mpvpe;
  std::optional<double> mpjpe;
  bool aligned = false;
};

/// `camera` enables the normal error; `regressor` enables MPJPE. MPVPE is
/// reported whenever the meshes share a topology.
MetricsReport compute_metrics(const Mesh& recon, const Mesh& truth, const MetricsOptions& options,
                              const Camera* camera = nullptr,
                              const JointRegressor* regressor = nullptr);

/// `key = value` lines in a fixed order.
std::string format_report(const MetricsReport& report);

}  // namespace topofit
