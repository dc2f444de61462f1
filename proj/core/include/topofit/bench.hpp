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

#include <optional>
#include <string>

#include "topofit/registration.hpp"

namespace topofit {

struct BenchRow {
  std::string method;
  double extraction_seconds = 0.0;
  double optimization_seconds = 0.0;
  double total_seconds = 0.0;
  LossBreakdown final_loss;
  std::optional<double> p2s;  ///< refined surface to reference, model units
};

struct BenchReport {
  GridResolution mc_resolution{};
  std::size_t vertices = 0;
  int iterations = 0;
  BenchRow chamfer;
  BenchRow implicit;
  bool same_faces = false;  ///< both outputs keep the input face list
};

struct BenchOptions {
  std::size_t p2s_points = 20000;
  std::uint64_t seed = 0;
};

/// Runs the Chamfer baseline and implicit registration on identical inputs.
/// `reference`, when given, adds a P2S quality column.
BenchReport bench_registration(const Mesh& mesh, const ImplicitField& field, const Camera& camera,
                               const RegistrationConfig& config, GridResolution mc_resolution,
                               const Mesh* reference = nullptr, const BenchOptions& options = {});

/// Two-row timing table: method, extraction, optimization, total (seconds).
std::string format_bench_table(const BenchReport& report);

}  // namespace topofit
