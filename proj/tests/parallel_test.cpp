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

#include "topofit/parallel.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <vector>

namespace {

using namespace topofit;

class ParallelTest : public ::testing::Test {
 protected:
  void TearDown() override { set_thread_count(0); }
};

TEST_F(ParallelTest, VisitsEveryIndexOnce) {
  for (int threads : {1, 2, 3, 7}) {
    set_thread_count(threads);
    EXPECT_EQ(thread_count(), threads);
    for (std::size_t n : {0u, 1u, 63u, 64u, 1000u, 1001u}) {
      std::vector<int> hits(n, 0);
      parallel_for(n, [&](std::size_t i) { ++hits[i]; });
      for (int h : hits) EXPECT_EQ(h, 1);
    }
  }
}

TEST_F(ParallelTest, RangesAreContiguousAndCover) {
  set_thread_count(4);
  std::vector<std::pair<std::size_t, std::size_t>> ranges(4, {0, 0});
  std::atomic<int> calls{0};
  parallel_ranges(1000, [&](std::size_t b, std::size_t e) {
    ranges[static_cast<std::size_t>(calls++)] = {b, e};
  });
  std::sort(ranges.begin(), ranges.begin() + calls.load());
  std::size_t next = 0;
  for (int i = 0; i < calls.load(); ++i) {
    EXPECT_EQ(ranges[static_cast<std::size_t>(i)].first, next);
    next = ranges[static_cast<std::size_t>(i)].second;
  }
  EXPECT_EQ(next, 1000u);
}

TEST_F(ParallelTest, ExceptionsPropagate) {
  set_thread_count(3);
  EXPECT_THROW(parallel_for(500, [](std::size_t i) {
                 if (i == 321) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST_F(ParallelTest, DefaultRestoredByNonPositive) {
  set_thread_count(5);
  set_thread_count(-2);
  EXPECT_GE(thread_count(), 1);
  EXPECT_NE(thread_count(), 5);
}

}  // namespace
