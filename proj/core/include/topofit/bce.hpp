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

#include <span>
#include <vector>

#include "topofit/sampling.hpp"

namespace topofit {

constexpr double kBceClamp = 1e-7;

struct BceLoss {
  double value = 0.0;
  /// Set when eta is 0 or 1, which zeroes one of the two weighted terms.
  bool degenerate = false;
};

/// Outside-ratio weighted binary cross entropy, negated and averaged so lower
/// is better:
///   -(1/n) sum_i [ eta y_i log f_i + (1 - eta)(1 - y_i) log(1 - f_i) ]
/// Predictions are clamped to [1e-7, 1 - 1e-7]. Throws on a length mismatch.
BceLoss extended_bce(std::span<const double> predictions, const OccupancyBatch& batch);

/// d loss / d f_i; zero where the clamp is active.
std::vector<double> extended_bce_gradient(std::span<const double> predictions,
                                          const OccupancyBatch& batch);

}  // namespace topofit
