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

#include "topofit/autoencoder.hpp"

namespace topofit {

/// Manifest path paired with a checkpoint: `<path>.manifest`.
std::filesystem::path checkpoint_manifest_path(const std::filesystem::path& path);

/// Writes the binary tensor file and its text manifest.
///
/// Binary layout (little-endian): magic "TPFGCN01", uint32 tensor count,
/// then per tensor: uint32 name length, name bytes, uint32 rank, rank x
/// uint64 dimensions, float64 values in the model's parameter order.
/// The manifest records the topology hash, widths, and per-layer orders.
void save_checkpoint(const std::filesystem::path& path, const MeshAutoencoder& model);

/// Rebuilds a model for `topology`. Throws if the topology hash, any
/// tensor name, or any shape disagrees with the manifest.
MeshAutoencoder load_checkpoint(const std::filesystem::path& path, const Mesh& topology);

}  // namespace topofit
