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

#include "topofit/metrics.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include <fmt/core.h>

#include "topofit/parallel.hpp"
#include "topofit/raster.hpp"
#include "topofit/sampling.hpp"

namespace topofit {
namespace {

void check_same_topology(const Mesh& a, const Mesh& b) {
  if (a.vertex_count() != b.vertex_count()) {
    throw Error(fmt::format("meshes differ in vertex count ({} vs {})", a.vertex_count(),
                            b.vertex_count()));
  }
}

Vec3 centroid(const std::vector<Vec3>& points) {
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : points) c += p;
  return points.empty() ? c : Vec3(c / static_cast<double>(points.size()));
}

double mean_pair_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b, bool align) {
  const Vec3 shift = align ? Vec3(centroid(a) - centroid(b)) : Vec3::Zero();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - (b[i] + shift)).norm();
  return a.empty() ? 0.0 : sum / static_cast<double>(a.size());
}

Mat3 rotation_about_y(double angle) {
  return Eigen::AngleAxisd(angle, Vec3::UnitY()).toRotationMatrix();
}

}  // namespace

std::vector<Vec3> sample_surface(const Mesh& mesh, std::size_t count, std::uint64_t seed) {
  if (mesh.empty()) throw Error("cannot sample points on an empty mesh");
  const SurfaceSampler sampler(mesh);
  std::vector<Vec3> points(count);
  parallel_for(count, [&](std::size_t i) {
    auto rng = item_stream(seed, i);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double u0 = uniform(rng), u1 = uniform(rng), u2 = uniform(rng);
    points[i] = sampler.sample(u0, u1, u2);
  });
  return points;
}

double mean_distance(const std::vector<Vec3>& points, const TriangleBvh& target) {
  if (points.empty()) throw Error("no points to measure");
  std::vector<double> d(points.size());
  parallel_for(points.size(), [&](std::size_t i) { d[i] = target.closest(points[i]).distance; });
  double sum = 0.0;
  for (double x : d) sum += x;
  return sum / static_cast<double>(d.size());
}

double p2s(const Mesh& source, const Mesh& target, std::size_t count, std::uint64_t seed) {
  if (target.empty()) throw Error("p2s target mesh is empty");
  return mean_distance(sample_surface(source, count, seed), TriangleBvh(target));
}

double chamfer(const Mesh& a, const Mesh& b, std::size_t count, std::uint64_t seed) {
  return 0.5 * (p2s(a, b, count, seed) + p2s(b, a, count, seed));
}

double normal_projection_error(const Mesh& recon, const Mesh& truth, const Camera& camera,
                               const NormalErrorOptions& options) {
  if (options.views < 1) throw Error(fmt::format("view count {} must be >= 1", options.views));
  if (recon.empty() || truth.empty()) throw Error("normal error needs two non-empty meshes");
  std::vector<Vec3> all = recon.vertices;
  all.insert(all.end(), truth.vertices.begin(), truth.vertices.end());
  const Vec3 center = Aabb::of(all).center();

  double sum = 0.0;
  std::size_t pixels = 0;
  for (int k = 0; k < options.views; ++k) {
    Camera view = camera;
    if (k > 0) {
      const double angle = 2.0 * std::numbers::pi * k / options.views;
      view.rotation = camera.rotation * rotation_about_y(angle);
      view.translation = camera.rotation * center + camera.translation - view.rotation * center;
    }
    const ImageWindow window = ImageWindow::fit({&recon, &truth}, view, options.image_size);
    const NormalImage a = render_normals(recon, view, window);
    const NormalImage b = render_normals(truth, view, window);
    for (std::size_t p = 0; p < a.normal.size(); ++p) {
      if (!a.covered[p] || !b.covered[p]) continue;
      sum += (a.normal[p] - b.normal[p]).norm();
      ++pixels;
    }
  }
  if (pixels == 0) throw Error("rendered foreground masks do not intersect");
  return sum / static_cast<double>(pixels);
}

std::vector<Vec3> JointRegressor::apply(const std::vector<Vec3>& vertices) const {
  if (vertices.size() != vertex_count) {
    throw Error(fmt::format("regressor expects {} vertices, mesh has {}", vertex_count,
                            vertices.size()));
  }
  std::vector<Vec3> joints(joint_count(), Vec3::Zero());
  for (Eigen::Index r = 0; r < weights.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(weights, r); it; ++it) {
      joints[static_cast<std::size_t>(r)] += it.value() * vertices[static_cast<std::size_t>(it.col())];
    }
  }
  return joints;
}

JointRegressor read_regressor(std::istream& in, std::size_t vertex_count,
                              const std::string& source_name) {
  std::vector<Eigen::Triplet<double>> triplets;
  std::string line;
  std::size_t line_no = 0;
  long max_joint = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream ss(line);
    long joint = -1, vertex = -1;
    double weight = 0.0;
    if (!(ss >> joint >> vertex >> weight)) {
      throw Error(fmt::format("{}:{}: expected 'joint vertex weight'", source_name, line_no));
    }
    if (joint < 0) throw Error(fmt::format("{}:{}: negative joint index", source_name, line_no));
    if (vertex < 0 || static_cast<std::size_t>(vertex) >= vertex_count) {
      throw Error(fmt::format("{}:{}: vertex {} out of range [0, {})", source_name, line_no, vertex,
                              vertex_count));
    }
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
      throw Error(fmt::format("{}:{}: weight must be finite and >= 0", source_name, line_no));
    }
    max_joint = std::max(max_joint, joint);
    triplets.emplace_back(static_cast<int>(joint), static_cast<int>(vertex), weight);
  }
  if (max_joint < 0) throw Error(fmt::format("{}: no regressor entries", source_name));
  JointRegressor reg;
  reg.vertex_count = vertex_count;
  reg.weights.resize(max_joint + 1, static_cast<Eigen::Index>(vertex_count));
  reg.weights.setFromTriplets(triplets.begin(), triplets.end());
  for (Eigen::Index r = 0; r < reg.weights.rows(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(reg.weights, r); it; ++it) row += it.value();
    if (std::abs(row - 1.0) > 1e-6) {
      throw Error(fmt::format("{}: weights of joint {} sum to {}, expected 1", source_name, r, row));
    }
  }
  return reg;
}

JointRegressor read_regressor(const std::filesystem::path& path, std::size_t vertex_count) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open '{}' for reading", path.string()));
  return read_regressor(in, vertex_count, path.string());
}

double mpvpe(const Mesh& a, const Mesh& b, bool align_centroids) {
  check_same_topology(a, b);
  return mean_pair_distance(a.vertices, b.vertices, align_centroids);
}

double mpjpe(const Mesh& a, const Mesh& b, const JointRegressor& regressor, bool align_centroids) {
  check_same_topology(a, b);
  return mean_pair_distance(regressor.apply(a.vertices), regressor.apply(b.vertices),
                            align_centroids);
}

MetricsReport compute_metrics(const Mesh& recon, const Mesh& truth, const MetricsOptions& options,
                              const Camera* camera, const JointRegressor* regressor) {
  MetricsReport r;
  r.points = options.points;
  r.seed = options.seed;
  r.aligned = options.align;
  r.p2s_recon_to_truth = p2s(recon, truth, options.points, options.seed);
  r.p2s_truth_to_recon = p2s(truth, recon, options.points, options.seed);
  r.chamfer = 0.5 * (r.p2s_recon_to_truth + r.p2s_truth_to_recon);
  if (camera) {
    r.normal_error = normal_projection_error(recon, truth, *camera, options.normal);
    r.normal_image_size = options.normal.image_size;
    r.normal_views = options.normal.views;
  }
  if (recon.vertex_count() == truth.vertex_count() && recon.faces == truth.faces) {
    r.mpvpe = mpvpe(recon, truth, options.align);
    if (regressor) r.mpjpe = mpjpe(recon, truth, *regressor, options.align);
  } else if (regressor) {
    throw Error("MPJPE needs meshes with identical topology");
  }
  return r;
}

std::string format_report(const MetricsReport& r) {
  std::string out;
  out += fmt::format("points = {}\n", r.points);
  out += fmt::format("seed = {}\n", r.seed);
  out += fmt::format("p2s_recon_to_truth_cm = {:.9g}\n", 100.0 * r.p2s_recon_to_truth);
  out += fmt::format("p2s_truth_to_recon_cm = {:.9g}\n", 100.0 * r.p2s_truth_to_recon);
  out += fmt::format("chamfer_cm = {:.9g}\n", 100.0 * r.chamfer);
  if (r.normal_error) {
    out += fmt::format("normal_error = {:.9g}\n", *r.normal_error);
    out += fmt::format("normal_image_size = {}\n", r.normal_image_size);
    out += fmt::format("normal_views = {}\n", r.normal_views);
  }
  if (r.mpvpe) out += fmt::format("mpvpe_mm = {:.9g}\n", 1000.0 * *r.mpvpe);
  if (r.mpjpe) out += fmt::format("mpjpe_mm = {:.9g}\n", 1000.0 * *r.mpjpe);
  out += fmt::format("aligned = {}\n", r.aligned ? "true" : "false");
  return out;
}

}  // namespace topofit
