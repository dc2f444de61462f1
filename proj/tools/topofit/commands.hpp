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

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topofit/manifest.hpp"

namespace topofit::cli {

/// A subcommand: its CLI11 node, the action, and where its manifest goes by
/// default. The action returns extra manifest entries (results, `timing.*`).
struct Command {
  CLI::App* app = nullptr;
  std::function<KeyValues()> run;
  std::function<std::filesystem::path()> manifest_path;
};

std::vector<Command> add_commands(CLI::App& app);

}  // namespace topofit::cli
