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
#include <random>
#include <string>
#include <vector>

#include "topofit/inside.hpp"
#include "topofit/mesh.hpp"

namespace topofit {

/// Area-weighted uniform sampling of a triangle mesh surface.
class SurfaceSampler {
 public:
  explicit SurfaceSampler(const Mesh& mesh);

  /// Maps three uniforms in [0, 1) to a surface point: `u0` picks the face by
  /// cumulative area, (`u1`, `u2`) a uniform barycentric location.
  Vec3 sample(double u0, double u1, double u2, std::size_t* face = nullptr) const;

 private:
  const Mesh* mesh_;
  std::vector<double> cdf_;
};

/// Independent random stream for item `index` of a run seeded by `seed`, so
/// parallel and serial generation agree exactly.
std::mt19937_64 item_stream(std::uint64_t seed, std::uint64_t index);

struct SamplingConfig {
  std::size_t count = 12000;
  double importance_std = 0.04;
  /// importance : uniform
  double ratio = 8.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SplitCounts {
  std::size_t importance = 0;
  std::size_t uniform = 0;
};

/// uniform = floor(count / (ratio + 1)); importance takes the remainder.
SplitCounts split_counts(std::size_t count, double ratio);

struct OccupancySample {
  Vec3 point = Vec3::Zero();
  std::uint8_t label = 0;  // 1 = inside
};

struct OccupancyBatch {
  std::vector<OccupancySample> samples;  // importance samples first
  double eta = 0.0;                      // fraction of outside labels
  std::uint64_t seed = 0;
  std::size_t importance_count = 0;
  std::size_t uniform_count = 0;
  double importance_std = 0.0;
  /// Surface point each importance sample was jittered from.
  std::vector<Vec3> anchors;

  double recompute_eta() const;
};

/// Mixture of near-surface (surface point + isotropic Gaussian noise) and
/// uniform samples in the mesh box grown by 10% per side, labelled by the
/// winding-number inside test. Deterministic for a given config.
OccupancyBatch sample_mixture(const InsideTester& tester, const SamplingConfig& config);
OccupancyBatch sample_mixture(const Mesh& mesh, const SamplingConfig& config);

/// ASCII: header `count eta seed`, then `x y z label` per line, 9 significant
/// digits.
void write_batch(std::ostream& out, const OccupancyBatch& batch);
void write_batch(const std::filesystem::path& path, const OccupancyBatch& batch);
OccupancyBatch read_batch(std::istream& in, const std::string& source_name = "<stream>");
OccupancyBatch read_batch(const std::filesystem::path& path);

}  // namespace topofit
