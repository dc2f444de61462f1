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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace topofit {

struct AdamConfig {
  double learning_rate = 0.002;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Coupled L2 decay: weight_decay * theta is added to the gradient.
  double weight_decay = 0.0;

  void validate() const;
};

/// Bias-corrected Adam over a flat parameter vector.
class Adam {
 public:
  Adam(std::size_t size, AdamConfig config);

  /// One update. Entries with `frozen[i]` set are left untouched, moments
  /// included. `frozen` may be empty.
  void step(std::span<double> params, std::span<const double> grad,
            std::span<const std::uint8_t> frozen = {});

  std::size_t size() const { return m_.size(); }
  long steps() const { return t_; }
  const AdamConfig& config() const { return config_; }
  /// Schedules change the step size between updates; moments are kept.
  void set_learning_rate(double lr);

 private:
  AdamConfig config_;
  std::vector<double> m_;
  std::vector<double> v_;
  long t_ = 0;
};

}  // namespace topofit
