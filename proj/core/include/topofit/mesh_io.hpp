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
#include <iosfwd>
#include <string>

#include "topofit/mesh.hpp"

namespace topofit {

/// Reads `v x y z` and `f i j k` (1-based; `i/t/n` forms accepted) records.
/// Every other directive is ignored. The result is validated, and watertight
/// inputs are checked for consistent winding. Errors name the source and line.
Mesh read_obj(std::istream& in, const std::string& source_name = "<stream>");
Mesh read_obj(const std::filesystem::path& path);

/// Writes only `v` and `f` records with round-trip precision.
void write_obj(std::ostream& out, const Mesh& mesh);
void write_obj(const std::filesystem::path& path, const Mesh& mesh);

/// One `0`/`1` per line; the line count must equal `expected_vertices` when
/// that is nonzero.
VertexMask read_mask(const std::filesystem::path& path, std::size_t expected_vertices = 0);
void write_mask(const std::filesystem::path& path, const VertexMask& mask);

}  // namespace topofit
