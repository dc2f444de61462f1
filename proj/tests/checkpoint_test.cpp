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

#include "topofit/checkpoint.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "topofit/manifest.hpp"
#include "topofit/primitives.hpp"

namespace {

using namespace topofit;
namespace fs = std::filesystem;

class CheckpointTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("topofit_ckpt_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static AutoencoderConfig config() {
    AutoencoderConfig c;
    c.channels = 4;
    c.bottleneck_channels = 2;
    c.latent = 5;
    c.blocks = 2;
    c.seed = 3;
    return c;
  }

  fs::path dir_;
};

TEST_F(CheckpointTest, RoundTripIsBitExact) {
  const Mesh t = icosphere(1, 0.5);
  const MeshAutoencoder model(t, config());
  const fs::path path = dir_ / "model.bin";
  save_checkpoint(path, model);
  ASSERT_TRUE(fs::exists(checkpoint_manifest_path(path)));
  const MeshAutoencoder back = load_checkpoint(path, t);
  EXPECT_EQ(back.parameters(), model.parameters());
  EXPECT_EQ(back.config().latent, 5);
  EXPECT_EQ(back.config().channels, 4);
  EXPECT_EQ(back.forward(mesh_features(t)), model.forward(mesh_features(t)));
}

TEST_F(CheckpointTest, ManifestDescribesLayers) {
  const Mesh t = icosphere(1, 0.5);
  const MeshAutoencoder model(t, config());
  const fs::path path = dir_ / "model.bin";
  save_checkpoint(path, model);
  const KeyValues m = KeyValues::read(checkpoint_manifest_path(path));
  EXPECT_EQ(m.get_int("latent"), 5);
  EXPECT_EQ(m.get_uint("layers"), model.layers().size());
  EXPECT_NE(m.get("layer.0").find("K=2"), std::string::npos);
  EXPECT_EQ(m.get("topology_hash").size(), 16u);
}

TEST_F(CheckpointTest, BinaryLayoutHeader) {
  const MeshAutoencoder model(icosahedron(), config());
  const fs::path path = dir_ / "model.bin";
  save_checkpoint(path, model);
  std::ifstream in(path, std::ios::binary);
  char magic[8];
  in.read(magic, 8);
  EXPECT_EQ(std::string(magic, 8), "TPFGCN01");
  std::uint32_t count = 0;
  in.read(reinterpret_cast<char*>(&count), 4);
  EXPECT_GE(count, model.layers().size());
  // Tensor payload is every parameter as float64.
  EXPECT_GT(fs::file_size(path), model.parameter_count() * sizeof(double));
}

TEST_F(CheckpointTest, TopologyMismatchThrows) {
  const MeshAutoencoder model(icosphere(1), config());
  const fs::path path = dir_ / "model.bin";
  save_checkpoint(path, model);
  EXPECT_THROW(load_checkpoint(path, icosphere(2)), Error);
}

TEST_F(CheckpointTest, CorruptionIsReportedWithOffset) {
  const Mesh t = icosahedron();
  const MeshAutoencoder model(t, config());
  const fs::path path = dir_ / "model.bin";
  save_checkpoint(path, model);
  fs::resize_file(path, fs::file_size(path) / 2);
  try {
    load_checkpoint(path, t);
    FAIL() << "expected truncation error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos) << e.what();
  }
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.write("XXXX", 4);
  }
  EXPECT_THROW(load_checkpoint(path, t), Error);
  EXPECT_THROW(load_checkpoint(dir_ / "missing.bin", t), Error);
}

}  // namespace
