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
#include <random>

#include "topofit/closest_point.hpp"
#include "topofit/field.hpp"
#include "topofit/grid_field.hpp"
#include "topofit/marching_cubes.hpp"
#include "topofit/primitives.hpp"

namespace {

using namespace topofit;

const Aabb kBox{Vec3::Constant(-0.8), Vec3::Constant(0.8)};

std::vector<Vec3> random_points(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  std::vector<Vec3> p(n);
  for (Vec3& x : p) x = Vec3(u(rng), u(rng), u(rng));
  return p;
}

const GridField& sphere_grid() {
  static const GridField grid = GridField::sample(
      SdfOccupancyField(std::make_shared<SphereSdf>(0.5), kDefaultOccupancyWidth, kBox), {128, 128, 128}, kBox);
  return grid;
}

void BM_GridEvalGrad(benchmark::State& state) {
  const GridField& grid = sphere_grid();
  const std::vector<Vec3> pts = random_points(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid.eval_grad(pts[i++ & 4095]));
  }
}
BENCHMARK(BM_GridEvalGrad);

void BM_BumpyOccupancyEval(benchmark::State& state) {
  const SdfOccupancyField field(std::make_shared<BumpySphereSdf>(0.5, 0.03, 8, 3), kDefaultOccupancyWidth, kBox);
  const std::vector<Vec3> pts = random_points(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(field.eval(pts[i++ & 4095]));
  }
}
BENCHMARK(BM_BumpyOccupancyEval);

void BM_MarchingCubes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(marching_cubes(sphere_grid(), {n, n, n}, 0.5));
  }
  state.SetComplexityN(static_cast<std::int64_t>(n) * n * n);
}
BENCHMARK(BM_MarchingCubes)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond)->Complexity();

void BM_BvhClosest(benchmark::State& state) {
  const TriangleBvh bvh(icosphere(static_cast<int>(state.range(0)), 0.5));
  const std::vector<Vec3> pts = random_points(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bvh.closest(pts[i++ & 4095]));
  }
}
BENCHMARK(BM_BvhClosest)->Arg(3)->Arg(5);

}  // namespace
