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

#include <bit>
#include <cstring>
#include <fstream>

#include <fmt/core.h>

#include "topofit/manifest.hpp"

namespace topofit {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes little-endian");

constexpr char kMagic[8] = {'T', 'P', 'F', 'G', 'C', 'N', '0', '1'};

struct Tensor {
  std::string name;
  std::vector<std::uint64_t> shape;
  std::size_t offset = 0;
  std::size_t count = 0;
};

std::vector<Tensor> tensors_of(const MeshAutoencoder& model) {
  std::vector<Tensor> out;
  for (const LayerSpec& l : model.layers()) {
    const auto in = static_cast<std::uint64_t>(l.in), o = static_cast<std::uint64_t>(l.out);
    const std::size_t weights = l.count - static_cast<std::size_t>(l.out);
    if (l.kind == LayerSpec::Kind::Chebyshev) {
      out.push_back({l.name + ".weight", {static_cast<std::uint64_t>(l.order + 1), in, o}, l.offset, weights});
    } else {
      out.push_back({l.name + ".weight", {o, in}, l.offset, weights});
    }
    out.push_back({l.name + ".bias", {o}, l.offset + weights, static_cast<std::size_t>(l.out)});
  }
  return out;
}

class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  template <typename T>
  T read(const char* what) {
    T value{};
    in_.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in_) throw Error(fmt::format("{}: truncated {} at byte {}", source_, what, offset_));
    offset_ += sizeof(T);
    return value;
  }
  void read_bytes(char* dst, std::size_t n, const char* what) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (!in_) throw Error(fmt::format("{}: truncated {} at byte {}", source_, what, offset_));
    offset_ += n;
  }
  std::size_t offset() const { return offset_; }
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t offset_ = 0;
};

}  // namespace

std::filesystem::path checkpoint_manifest_path(const std::filesystem::path& path) {
  std::filesystem::path m = path;
  m += ".manifest";
  return m;
}

void save_checkpoint(const std::filesystem::path& path, const MeshAutoencoder& model) {
  const std::vector<Tensor> tensors = tensors_of(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(kMagic, sizeof(kMagic));
  const auto count = static_cast<std::uint32_t>(tensors.size());
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));
  const std::vector<double>& params = model.parameters();
  for (const Tensor& t : tensors) {
    const auto len = static_cast<std::uint32_t>(t.name.size());
    out.write(reinterpret_cast<const char*>(&len), sizeof(len));
    out.write(t.name.data(), len);
    const auto rank = static_cast<std::uint32_t>(t.shape.size());
    out.write(reinterpret_cast<const char*>(&rank), sizeof(rank));
    out.write(reinterpret_cast<const char*>(t.shape.data()),
              static_cast<std::streamsize>(t.shape.size() * sizeof(std::uint64_t)));
    out.write(reinterpret_cast<const char*>(params.data() + t.offset),
              static_cast<std::streamsize>(t.count * sizeof(double)));
  }
  if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));

  const AutoencoderConfig& c = model.config();
  KeyValues m;
  m.set("format", "TPFGCN01");
  m.set("topology_hash", fmt::format("{:016x}", topology_hash(model.topology())));
  m.set("vertices", std::to_string(model.topology().vertex_count()));
  m.set("faces", std::to_string(model.topology().face_count()));
  m.set("channels", std::to_string(c.channels));
  m.set("bottleneck_channels", std::to_string(c.bottleneck_channels));
  m.set("latent", std::to_string(c.latent));
  m.set("blocks", std::to_string(c.blocks));
  m.set("order", std::to_string(c.order));
  m.set("slope", fmt::format("{:.17g}", c.slope));
  m.set("seed", std::to_string(c.seed));
  m.set("lambda_max", fmt::format("{:.17g}", model.laplacian().lambda_max));
  m.set("layers", std::to_string(model.layers().size()));
  for (std::size_t i = 0; i < model.layers().size(); ++i) {
    const LayerSpec& l = model.layers()[i];
    m.set(fmt::format("layer.{}", i),
          fmt::format("{} {} in={} out={} K={}", l.name,
                      l.kind == LayerSpec::Kind::Chebyshev ? "chebyshev" : "dense", l.in, l.out,
                      l.order));
  }
  m.write(checkpoint_manifest_path(path));
}

MeshAutoencoder load_checkpoint(const std::filesystem::path& path, const Mesh& topology) {
  const KeyValues m = KeyValues::read(checkpoint_manifest_path(path));
  if (m.get("format") != "TPFGCN01") {
    throw Error(fmt::format("{}: unsupported format '{}'", path.string(), m.get("format")));
  }
  const std::string hash = fmt::format("{:016x}", topology_hash(topology));
  if (m.get("topology_hash") != hash) {
    throw Error(fmt::format("{}: checkpoint topology {} does not match mesh topology {}", path.string(),
                            m.get("topology_hash"), hash));
  }
  AutoencoderConfig c;
  c.channels = static_cast<int>(m.get_int("channels"));
  c.bottleneck_channels = static_cast<int>(m.get_int("bottleneck_channels"));
  c.latent = static_cast<int>(m.get_int("latent"));
  c.blocks = static_cast<int>(m.get_int("blocks"));
  c.order = static_cast<int>(m.get_int("order"));
  c.slope = m.get_double("slope");
  c.seed = m.get_uint("seed");
  MeshAutoencoder model(topology, c);

  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}' for reading", path.string()));
  Reader r(in, path.string());
  char magic[8];
  r.read_bytes(magic, sizeof(magic), "magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(fmt::format("{}: bad magic at byte 0", path.string()));
  }
  const std::vector<Tensor> expected = tensors_of(model);
  const auto count = r.read<std::uint32_t>("tensor count");
  if (count != expected.size()) {
    throw Error(fmt::format("{}: {} tensors, model needs {}", path.string(), count, expected.size()));
  }
  std::vector<double>& params = model.parameters();
  for (const Tensor& t : expected) {
    const std::size_t at = r.offset();
    const auto len = r.read<std::uint32_t>("name length");
    if (len > 4096) throw Error(fmt::format("{}: implausible name length at byte {}", path.string(), at));
    std::string name(len, '\0');
    r.read_bytes(name.data(), len, "tensor name");
    if (name != t.name) {
      throw Error(fmt::format("{}: tensor '{}' at byte {}, expected '{}'", path.string(), name, at, t.name));
    }
    const auto rank = r.read<std::uint32_t>("rank");
    std::vector<std::uint64_t> shape(rank);
    for (auto& d : shape) d = r.read<std::uint64_t>("dimension");
    if (shape != t.shape) {
      throw Error(fmt::format("{}: tensor '{}' at byte {} has the wrong shape", path.string(), name, at));
    }
    r.read_bytes(reinterpret_cast<char*>(params.data() + t.offset), t.count * sizeof(double),
                 "tensor values");
  }
  return model;
}

}  // namespace topofit
