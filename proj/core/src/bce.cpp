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

#include "topofit/bce.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace topofit {
namespace {

void check_lengths(std::span<const double> predictions, const OccupancyBatch& batch) {
  if (predictions.size() != batch.samples.size()) {
    throw Error(fmt::format("{} predictions for a batch of {} samples", predictions.size(),
                            batch.samples.size()));
  }
  if (batch.samples.empty()) throw Error("empty occupancy batch");
}

}  // namespace

BceLoss extended_bce(std::span<const double> predictions, const OccupancyBatch& batch) {
  check_lengths(predictions, batch);
  const double eta = batch.eta;
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double f = std::clamp(predictions[i], kBceClamp, 1.0 - kBceClamp);
    const double y = batch.samples[i].label;
    sum += eta * y * std::log(f) + (1.0 - eta) * (1.0 - y) * std::log(1.0 - f);
  }
  BceLoss loss;
  loss.value = -sum / static_cast<double>(predictions.size());
  loss.degenerate = eta <= 0.0 || eta >= 1.0;
  return loss;
}

std::vector<double> extended_bce_gradient(std::span<const double> predictions,
                                          const OccupancyBatch& batch) {
  check_lengths(predictions, batch);
  const double eta = batch.eta;
  const double inv_n = 1.0 / static_cast<double>(predictions.size());
  std::vector<double> grad(predictions.size(), 0.0);
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double f = predictions[i];
    if (f < kBceClamp || f > 1.0 - kBceClamp) continue;
    const double y = batch.samples[i].label;
    grad[i] = -inv_n * (eta * y / f - (1.0 - eta) * (1.0 - y) / (1.0 - f));
  }
  return grad;
}

}  // namespace topofit
