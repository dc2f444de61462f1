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

#include <cmath>
#include <cstdint>

#include <fmt/core.h>

#include "topofit/types.hpp"

namespace topofit {

void AdamConfig::validate() const {
  if (!(learning_rate > 0.0)) throw Error(fmt::format("learning rate {} must be positive", learning_rate));
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw Error(fmt::format("beta1 {} outside [0, 1)", beta1));
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw Error(fmt::format("beta2 {} outside [0, 1)", beta2));
  if (!(epsilon > 0.0)) throw Error(fmt::format("epsilon {} must be positive", epsilon));
  if (!(weight_decay >= 0.0)) throw Error(fmt::format("weight decay {} must be >= 0", weight_decay));
}

Adam::Adam(std::size_t size, AdamConfig config) : config_(config), m_(size, 0.0), v_(size, 0.0) {
  config_.validate();
}

void Adam::step(std::span<double> params, std::span<const double> grad,
                std::span<const std::uint8_t> frozen) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw Error(fmt::format("Adam sized for {} parameters got {} values and {} gradients", m_.size(),
                            params.size(), grad.size()));
  }
  if (!frozen.empty() && frozen.size() != m_.size()) {
    throw Error(fmt::format("Adam frozen mask has {} entries, expected {}", frozen.size(), m_.size()));
  }
  ++t_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (!frozen.empty() && frozen[i]) continue;
    const double g = grad[i] + config_.weight_decay * params[i];
    m_[i] = b1 * m_[i] + (1.0 - b1) * g;
    v_[i] = b2 * v_[i] + (1.0 - b2) * g * g;
    const double m_hat = m_[i] / c1;
    const double v_hat = v_[i] / c2;
    params[i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
  }
}

void Adam::set_learning_rate(double lr) {
  AdamConfig next = config_;
  next.learning_rate = lr;
  next.validate();
  config_ = next;
}

}  // namespace topofit
