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

#include "topofit/adam.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "topofit/types.hpp"

namespace {

using namespace topofit;

TEST(Adam, FirstStepMovesByLearningRate) {
  // With bias correction the first update is lr * g / (|g| + eps).
  AdamConfig c;
  c.learning_rate = 0.1;
  Adam adam(2, c);
  std::vector<double> x = {1.0, -2.0};
  const std::vector<double> g = {3.0, -0.5};
  adam.step(x, g);
  EXPECT_NEAR(x[0], 1.0 - 0.1 * 3.0 / (3.0 + 1e-8), 1e-15);
  EXPECT_NEAR(x[1], -2.0 + 0.1 * 0.5 / (0.5 + 1e-8), 1e-15);
  EXPECT_EQ(adam.steps(), 1);
}

TEST(Adam, MatchesReferenceRecurrence) {
  AdamConfig c;
  c.learning_rate = 0.01;
  c.weight_decay = 0.1;
  Adam adam(1, c);
  std::vector<double> x = {0.7};
  double ref = 0.7, m = 0.0, v = 0.0;
  for (int t = 1; t <= 50; ++t) {
    const double grad = std::sin(0.3 * t) + 2.0 * x[0];
    const double g = grad + 0.1 * ref;
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    ref -= 0.01 * (m / (1 - std::pow(0.9, t))) / (std::sqrt(v / (1 - std::pow(0.999, t))) + 1e-8);
    adam.step(x, std::vector<double>{grad});
    ASSERT_NEAR(x[0], ref, 1e-14) << t;
  }
}

TEST(Adam, MinimizesQuadratic) {
  AdamConfig c;
  c.learning_rate = 0.05;
  Adam adam(3, c);
  std::vector<double> x = {1.0, -1.0, 2.0};
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> g(3);
    for (int i = 0; i < 3; ++i) g[static_cast<std::size_t>(i)] = 2.0 * (x[static_cast<std::size_t>(i)] - i);
    adam.step(x, g);
  }
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(x[static_cast<std::size_t>(i)], i, 1e-3);
}

TEST(Adam, FrozenEntriesNeverMove) {
  Adam adam(3, AdamConfig{});
  std::vector<double> x = {1.0, 2.0, 3.0};
  const std::vector<std::uint8_t> frozen = {0, 1, 0};
  for (int t = 0; t < 10; ++t) adam.step(x, std::vector<double>{1.0, 1.0, 1.0}, frozen);
  EXPECT_EQ(x[1], 2.0);
  EXPECT_LT(x[0], 1.0);
}

TEST(Adam, RejectsBadConfigAndSizes) {
  AdamConfig c;
  c.learning_rate = 0.0;
  EXPECT_THROW(Adam(1, c), Error);
  c = AdamConfig{};
  c.beta1 = 1.0;
  EXPECT_THROW(Adam(1, c), Error);
  Adam adam(2, AdamConfig{});
  std::vector<double> x(3);
  EXPECT_THROW(adam.step(x, std::vector<double>(3)), Error);
  EXPECT_THROW(adam.set_learning_rate(-1.0), Error);
}

}  // namespace
