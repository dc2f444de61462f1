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

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "topofit/field.hpp"
#include "topofit/grid_field.hpp"
#include "topofit/primitives.hpp"
#include "topofit/registration.hpp"

namespace {

using namespace topofit;

const Aabb kBox{Vec3::Constant(-0.8), Vec3::Constant(0.8)};

const GridField& ellipsoid_grid() {
  static const GridField grid = GridField::sample(
      SdfOccupancyField(std::make_shared<EllipsoidSdf>(Vec3(0.5, 0.5, 0.55)), kDefaultOccupancyWidth, kBox),
      {128, 128, 128}, kBox);
  return grid;
}

// One objective and gradient evaluation, the per-iteration cost of the
// implicit method.
void BM_ImplicitObjective(benchmark::State& state) {
  const Mesh mesh = icosphere(static_cast<int>(state.range(0)), 0.5);
  const PixelAlignedField field(Camera::identity(), ellipsoid_grid());
  const ImplicitObjective obj(mesh, field, Camera::identity(), RegistrationConfig{});
  const std::vector<double> x(obj.parameter_count(), 0.01);
  std::vector<double> grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(obj.evaluate(x, &grad));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mesh.vertex_count()));
}
BENCHMARK(BM_ImplicitObjective)->Arg(3)->Arg(5);

void BM_ChamferObjective(benchmark::State& state) {
  const Mesh mesh = icosphere(static_cast<int>(state.range(0)), 0.5);
  const TriangleBvh target(icosphere(5, 0.52));
  const ChamferObjective obj(mesh, target, Camera::identity(), RegistrationConfig{});
  const std::vector<double> x(obj.parameter_count(), 0.01);
  std::vector<double> grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(obj.evaluate(x, &grad));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mesh.vertex_count()));
}
BENCHMARK(BM_ChamferObjective)->Arg(3)->Arg(5);

void BM_ImplicitRegister(benchmark::State& state) {
  const Mesh mesh = icosphere(4, 0.5);
  const PixelAlignedField field(Camera::identity(), ellipsoid_grid());
  RegistrationConfig c;
  c.iterations = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(implicit_register(mesh, field, Camera::identity(), c));
  }
}
BENCHMARK(BM_ImplicitRegister)->Unit(benchmark::kMillisecond);

}  // namespace
