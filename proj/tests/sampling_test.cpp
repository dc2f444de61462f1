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

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"
#include "topofit/closest_point.hpp"
#include "topofit/inside.hpp"
#include "topofit/parallel.hpp"
#include "topofit/primitives.hpp"

namespace {

using namespace topofit;

TEST(Sampling, SplitCountsEightToOne) {
  const SplitCounts s = split_counts(12000, 8.0);
  EXPECT_EQ(s.importance, 10667u);
  EXPECT_EQ(s.uniform, 1333u);
}

TEST(Sampling, SplitCountsFloorRule) {
  for (std::size_t n : {1u, 2u, 9u, 10u, 17u, 18u, 1000u, 12345u}) {
    const SplitCounts s = split_counts(n, 8.0);
    EXPECT_EQ(s.uniform, n / 9);
    EXPECT_EQ(s.importance + s.uniform, n);
  }
}

TEST(Sampling, BatchMatchesSplitAndStoredEta) {
  const Mesh m = icosphere(3, 0.5);
  SamplingConfig c;
  c.seed = 5;
  const OccupancyBatch b = sample_mixture(m, c);
  ASSERT_EQ(b.samples.size(), 12000u);
  EXPECT_EQ(b.importance_count, 10667u);
  EXPECT_EQ(b.uniform_count, 1333u);
  std::size_t outside = 0;
  for (const OccupancySample& s : b.samples) outside += s.label == 0 ? 1 : 0;
  EXPECT_EQ(b.eta, static_cast<double>(outside) / 12000.0);
  EXPECT_EQ(b.eta, b.recompute_eta());
}

TEST(Sampling, LabelsFollowInsideTest) {
  const Mesh m = testutil::jitter(icosphere(2, 0.5), 0.02, 8);
  SamplingConfig c;
  c.count = 3000;
  const OccupancyBatch b = sample_mixture(m, c);
  const InsideTester t(m);
  for (const OccupancySample& s : b.samples) EXPECT_EQ(s.label != 0, t.contains(s.point));
}

TEST(Sampling, ImportancePointsHugTheSurface) {
  const Mesh m = icosphere(3, 0.5);
  SamplingConfig c;
  const OccupancyBatch b = sample_mixture(m, c);
  ASSERT_EQ(b.anchors.size(), b.importance_count);
  const TriangleBvh bvh(m);
  std::size_t within = 0;
  for (std::size_t i = 0; i < b.importance_count; ++i) {
    EXPECT_LT(bvh.closest(b.anchors[i]).distance, 1e-12);
    within += (b.samples[i].point - b.anchors[i]).norm() < 4.0 * c.importance_std ? 1 : 0;
  }
  EXPECT_GE(static_cast<double>(within) / static_cast<double>(b.importance_count), 0.99);
}

TEST(Sampling, UniformPointsStayInGrownBox) {
  const Mesh m = icosphere(2, 0.5);
  const OccupancyBatch b = sample_mixture(m, SamplingConfig{});
  const Aabb box = Aabb::of(m.vertices).expanded(0.1);
  for (std::size_t i = b.importance_count; i < b.samples.size(); ++i) {
    EXPECT_TRUE(box.contains(b.samples[i].point));
  }
}

TEST(Sampling, SameSeedIsBitIdenticalAcrossThreadCounts) {
  const Mesh m = icosphere(2, 0.5);
  SamplingConfig c;
  c.count = 4000;
  c.seed = 42;
  set_thread_count(1);
  const OccupancyBatch a = sample_mixture(m, c);
  set_thread_count(4);
  const OccupancyBatch b = sample_mixture(m, c);
  set_thread_count(0);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].point, b.samples[i].point);
    EXPECT_EQ(a.samples[i].label, b.samples[i].label);
  }
  EXPECT_EQ(a.eta, b.eta);
}

TEST(Sampling, DifferentSeedsGiveDifferentEta) {
  const Mesh m = icosphere(2, 0.5);
  SamplingConfig c;
  c.seed = 1;
  const double eta1 = sample_mixture(m, c).eta;
  c.seed = 2;
  EXPECT_NE(eta1, sample_mixture(m, c).eta);
}

TEST(Sampling, ConfigValidation) {
  SamplingConfig c;
  c.count = 0;
  EXPECT_THROW(c.validate(), Error);
  c = SamplingConfig{};
  c.importance_std = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = SamplingConfig{};
  c.ratio = -1.0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Sampling, BatchFileRoundTrip) {
  SamplingConfig c;
  c.count = 500;
  const OccupancyBatch b = sample_mixture(icosphere(2, 0.5), c);
  std::stringstream ss;
  write_batch(ss, b);
  const OccupancyBatch back = read_batch(ss);
  ASSERT_EQ(back.samples.size(), b.samples.size());
  EXPECT_EQ(back.seed, b.seed);
  EXPECT_NEAR(back.eta, b.eta, 1e-9);
  for (std::size_t i = 0; i < b.samples.size(); ++i) {
    EXPECT_EQ(back.samples[i].label, b.samples[i].label);
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(back.samples[i].point(k), b.samples[i].point(k),
                  1e-8 * std::max(1.0, std::abs(b.samples[i].point(k))));
    }
  }
}

TEST(Sampling, SurfaceSamplerIsAreaWeighted) {
  // Two triangles, the second with three times the area.
  Mesh m;
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(3, 0, 1), Vec3(0, 1, 1)};
  m.faces = {{0, 1, 2}, {3, 4, 5}};
  const SurfaceSampler s(m);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int second = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    std::size_t f = 0;
    s.sample(u(rng), u(rng), u(rng), &f);
    second += f == 1 ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(second) / n, 0.75, 0.01);
}

}  // namespace
