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

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "commands.hpp"
#include "topofit/manifest.hpp"
#include "topofit/parallel.hpp"
#include "topofit/types.hpp"

namespace {

namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

/// Echo of every option of `sub` in declaration order. Flags record
/// "true"/"false"; options record their value or default.
void record_options(const CLI::App& sub, topofit::KeyValues& manifest) {
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    std::string value;
    if (opt->get_type_size() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      value = opt->as<std::string>();
    } else {
      value = opt->get_default_str();
    }
    manifest.set("arg." + name, value);
  }
}

int run(std::vector<std::string> args);

/// Rebuilds the command line a manifest was written for and runs it again.
int replay(const fs::path& path, int threads) {
  const topofit::KeyValues m = topofit::KeyValues::read(path);
  if (m.get("tool") != "topofit") {
    throw topofit::Error(fmt::format("{}: not a topofit manifest", path.string()));
  }
  std::vector<std::string> args;
  if (threads >= 0) {
    args.push_back("--threads");
    args.push_back(std::to_string(threads));
  }
  args.push_back(m.get("command"));
  for (const auto& [key, value] : m.entries()) {
    if (key.rfind("arg.", 0) != 0) continue;
    const std::string flag = "--" + key.substr(4);
    if (value == "true" || value == "false") {
      if (value == "true") args.push_back(flag);
      continue;
    }
    if (value.empty()) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return run(std::move(args));
}

int run(std::vector<std::string> args) {
  CLI::App app("Mesh registration against implicit occupancy fields", "topofit");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  int threads = -1;
  std::string manifest_out;
  app.add_option("--threads", threads, "worker threads (0: hardware default)");
  app.add_option("--manifest-out", manifest_out, "where to write the run manifest");

  std::vector<topofit::cli::Command> commands = topofit::cli::add_commands(app);
  std::string replay_path;
  CLI::App* replay_cmd = app.add_subcommand("replay", "rerun a command from its manifest");
  replay_cmd->add_option("--manifest", replay_path, "manifest file")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (threads == 0) topofit::set_thread_count(0);
    if (threads > 0) topofit::set_thread_count(threads);

    if (replay_cmd->parsed()) return replay(fs::path(replay_path), threads);

    for (const topofit::cli::Command& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      topofit::KeyValues manifest;
      manifest.set("tool", "topofit");
      manifest.set("version", kVersion);
      manifest.set("command", cmd.app->get_name());
      record_options(*cmd.app, manifest);
      const auto start = std::chrono::steady_clock::now();
      const topofit::KeyValues extras = cmd.run();
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      for (const auto& [key, value] : extras.entries()) manifest.set(key, value);
      manifest.set("run.threads", std::to_string(topofit::thread_count()));
      manifest.set("timing.wall_s", fmt::format("{:.6f}", seconds));
      manifest.write(manifest_out.empty() ? cmd.manifest_path() : fs::path(manifest_out));
      return 0;
    }
    return 0;
  } catch (const std::exception& e) {
    fmt::print(stderr, "topofit: error: {}\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args));
}
