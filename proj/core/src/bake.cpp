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

#include "topofit/bake.hpp"

#include <algorithm>

#include "topofit/inside.hpp"

namespace topofit {
namespace {

void blur_axis(std::vector<float>& values, const GridResolution& res, int axis) {
  const std::size_t nx = static_cast<std::size_t>(res[0]);
  const std::size_t ny = static_cast<std::size_t>(res[1]);
  const std::size_t stride[3] = {1, nx, nx * ny};
  const int n = res[axis];
  std::vector<float> out(values.size());
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const int coord = static_cast<int>((idx / stride[axis]) % static_cast<std::size_t>(n));
    const std::size_t lo = coord > 0 ? idx - stride[axis] : idx;
    const std::size_t hi = coord + 1 < n ? idx + stride[axis] : idx;
    out[idx] = 0.25f * values[lo] + 0.5f * values[idx] + 0.25f * values[hi];
  }
  values.swap(out);
}

}  // namespace

GridField bake_field(const Mesh& mesh, GridResolution resolution, const Aabb& box, bool smooth) {
  const InsideTester tester(mesh);
  const auto labels = tester.classify_grid(resolution, box);
  std::vector<float> values(labels.size());
  std::transform(labels.begin(), labels.end(), values.begin(),
                 [](std::uint8_t l) { return l ? 1.0f : 0.0f; });
  if (smooth) {
    for (int axis = 0; axis < 3; ++axis) blur_axis(values, resolution, axis);
    for (float& v : values) v = std::clamp(v, 0.0f, 1.0f);
  }
  return GridField(resolution, box, std::move(values));
}

}  // namespace topofit
