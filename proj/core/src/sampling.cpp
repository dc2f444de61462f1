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

#include "topofit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/core.h>

#include "topofit/parallel.hpp"

namespace topofit {

SurfaceSampler::SurfaceSampler(const Mesh& mesh) : mesh_(&mesh) {
  if (mesh.faces.empty()) throw Error("cannot sample an empty mesh");
  cdf_.resize(mesh.faces.size());
  double acc = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    acc += face_area(mesh, f);
    cdf_[f] = acc;
  }
  if (!(acc > 0.0)) throw Error("cannot sample a mesh with zero surface area");
}

Vec3 SurfaceSampler::sample(double u0, double u1, double u2, std::size_t* face) const {
  const double target = u0 * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
  const auto f = static_cast<std::size_t>(
      std::min<std::ptrdiff_t>(it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
  if (face) *face = f;
  const Face& t = mesh_->faces[f];
  const double r = std::sqrt(u1);
  const double wa = 1.0 - r, wb = r * (1.0 - u2), wc = r * u2;
  return wa * mesh_->vertices[t[0]] + wb * mesh_->vertices[t[1]] + wc * mesh_->vertices[t[2]];
}

std::mt19937_64 item_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

void SamplingConfig::validate() const {
  if (count == 0) throw Error("sample count must be positive");
  if (!(importance_std > 0.0)) throw Error("importance std must be positive");
  if (!(ratio > 0.0)) throw Error("importance:uniform ratio must be positive");
}

SplitCounts split_counts(std::size_t count, double ratio) {
  const auto uniform = static_cast<std::size_t>(std::floor(static_cast<double>(count) / (ratio + 1.0)));
  return {count - uniform, uniform};
}

double OccupancyBatch::recompute_eta() const {
  if (samples.empty()) return 0.0;
  const auto outside = std::count_if(samples.begin(), samples.end(),
                                     [](const OccupancySample& s) { return s.label == 0; });
  return static_cast<double>(outside) / static_cast<double>(samples.size());
}

OccupancyBatch sample_mixture(const InsideTester& tester, const SamplingConfig& config) {
  config.validate();
  const Mesh& mesh = tester.mesh();
  const SurfaceSampler surface(mesh);
  const Aabb box = Aabb::of(mesh.vertices).expanded(0.10);
  const SplitCounts split = split_counts(config.count, config.ratio);

  OccupancyBatch batch;
  batch.seed = config.seed;
  batch.importance_count = split.importance;
  batch.uniform_count = split.uniform;
  batch.importance_std = config.importance_std;
  batch.samples.resize(config.count);
  batch.anchors.resize(split.importance);

  parallel_for(config.count, [&](std::size_t i) {
    auto rng = item_stream(config.seed, i);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    if (i < split.importance) {
      std::normal_distribution<double> normal(0.0, config.importance_std);
      const double u0 = uniform(rng), u1 = uniform(rng), u2 = uniform(rng);
      const Vec3 anchor = surface.sample(u0, u1, u2);
      const double nx = normal(rng), ny = normal(rng), nz = normal(rng);
      batch.anchors[i] = anchor;
      batch.samples[i].point = anchor + Vec3(nx, ny, nz);
    } else {
      const double ux = uniform(rng), uy = uniform(rng), uz = uniform(rng);
      batch.samples[i].point = box.min + Vec3(ux, uy, uz).cwiseProduct(box.extent());
    }
    batch.samples[i].label = tester.contains(batch.samples[i].point) ? 1 : 0;
  });
  batch.eta = batch.recompute_eta();
  return batch;
}

OccupancyBatch sample_mixture(const Mesh& mesh, const SamplingConfig& config) {
  return sample_mixture(InsideTester(mesh), config);
}

void write_batch(std::ostream& out, const OccupancyBatch& batch) {
  std::string buffer = fmt::format("{} {:.9g} {}\n", batch.samples.size(), batch.eta, batch.seed);
  for (const OccupancySample& s : batch.samples) {
    buffer += fmt::format("{:.9g} {:.9g} {:.9g} {}\n", s.point.x(), s.point.y(), s.point.z(),
                          static_cast<int>(s.label));
  }
  out << buffer;
}

void write_batch(const std::filesystem::path& path, const OccupancyBatch& batch) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  write_batch(out, batch);
}

OccupancyBatch read_batch(std::istream& in, const std::string& source_name) {
  OccupancyBatch batch;
  std::string line;
  if (!std::getline(in, line)) throw Error(fmt::format("{}:1: missing header", source_name));
  std::size_t count = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> count >> batch.eta >> batch.seed)) {
      throw Error(fmt::format("{}:1: header must be 'count eta seed'", source_name));
    }
  }
  batch.samples.reserve(count);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    OccupancySample s;
    int label = -1;
    if (!(ss >> s.point.x() >> s.point.y() >> s.point.z() >> label) || (label != 0 && label != 1)) {
      throw Error(fmt::format("{}:{}: expected 'x y z label'", source_name, line_no));
    }
    s.label = static_cast<std::uint8_t>(label);
    batch.samples.push_back(s);
  }
  if (batch.samples.size() != count) {
    throw Error(fmt::format("{}: header promises {} samples, found {}", source_name, count,
                            batch.samples.size()));
  }
  return batch;
}

OccupancyBatch read_batch(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}' for reading", path.string()));
  return read_batch(in, path.string());
}

}  // namespace topofit
