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

#include "topofit/bench.hpp"

#include <fmt/core.h>

#include "topofit/metrics.hpp"

namespace topofit {
namespace {

BenchRow make_row(std::string method, const RegistrationResult& r, const Mesh* reference,
                  const BenchOptions& options) {
  BenchRow row;
  row.method = std::move(method);
  row.extraction_seconds = r.extraction_seconds;
  row.optimization_seconds = r.optimization_seconds;
  row.total_seconds = r.total_seconds();
  row.final_loss = r.final_loss;
  if (reference) row.p2s = p2s(r.mesh, *reference, options.p2s_points, options.seed);
  return row;
}

}  // namespace

BenchReport bench_registration(const Mesh& mesh, const ImplicitField& field, const Camera& camera,
                               const RegistrationConfig& config, GridResolution mc_resolution,
                               const Mesh* reference, const BenchOptions& options) {
  BenchReport report;
  report.mc_resolution = mc_resolution;
  report.vertices = mesh.vertex_count();
  report.iterations = config.iterations;
  const RegistrationResult chamfer = chamfer_register(mesh, field, camera, config, mc_resolution);
  const RegistrationResult implicit = implicit_register(mesh, field, camera, config);
  report.chamfer = make_row("chamfer", chamfer, reference, options);
  report.implicit = make_row("implicit", implicit, reference, options);
  report.same_faces = chamfer.mesh.faces == mesh.faces && implicit.mesh.faces == mesh.faces;
  return report;
}

std::string format_bench_table(const BenchReport& report) {
  std::string out = fmt::format("{:<10} {:>14} {:>14} {:>12}", "method", "extraction_s",
                                "optimization_s", "total_s");
  const bool quality = report.chamfer.p2s.has_value();
  if (quality) out += fmt::format(" {:>10}", "p2s_cm");
  out += '\n';
  for (const BenchRow* row : {&report.chamfer, &report.implicit}) {
    out += fmt::format("{:<10} {:>14.3f} {:>14.3f} {:>12.3f}", row->method, row->extraction_seconds,
                       row->optimization_seconds, row->total_seconds);
    if (quality) out += fmt::format(" {:>10.4f}", 100.0 * row->p2s.value_or(0.0));
    out += '\n';
  }
  return out;
}

}  // namespace topofit
