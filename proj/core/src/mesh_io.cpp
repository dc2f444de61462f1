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

#include "topofit/mesh_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include <fmt/core.h>

namespace topofit {
namespace {

std::string_view next_token(std::string_view& line) {
  std::size_t start = line.find_first_not_of(" \t\r");
  if (start == std::string_view::npos) {
    line = {};
    return {};
  }
  std::size_t end = line.find_first_of(" \t\r", start);
  if (end == std::string_view::npos) end = line.size();
  std::string_view tok = line.substr(start, end - start);
  line.remove_prefix(end);
  return tok;
}

double parse_double(std::string_view tok, const std::string& where) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(fmt::format("{}: malformed number '{}'", where, tok));
  }
  return value;
}

int parse_index(std::string_view tok, const std::string& where) {
  tok = tok.substr(0, tok.find('/'));
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(fmt::format("{}: malformed face index '{}'", where, tok));
  }
  if (value <= 0) {
    throw Error(fmt::format("{}: face index {} must be positive", where, value));
  }
  return static_cast<int>(value - 1);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}' for reading", path.string()));
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  return out;
}

}  // namespace

Mesh read_obj(std::istream& in, const std::string& source_name) {
  Mesh mesh;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    const std::string_view kind = next_token(line);
    if (kind == "v") {
      const std::string where = fmt::format("{}:{}", source_name, line_no);
      Vec3 p;
      for (int k = 0; k < 3; ++k) {
        const std::string_view tok = next_token(line);
        if (tok.empty()) throw Error(fmt::format("{}: vertex needs 3 coordinates", where));
        p[k] = parse_double(tok, where);
      }
      mesh.vertices.push_back(p);
    } else if (kind == "f") {
      const std::string where = fmt::format("{}:{}", source_name, line_no);
      Face f{};
      int count = 0;
      for (std::string_view tok = next_token(line); !tok.empty(); tok = next_token(line)) {
        if (count == 3) throw Error(fmt::format("{}: only triangles are supported", where));
        f[count++] = parse_index(tok, where);
      }
      if (count != 3) throw Error(fmt::format("{}: face needs 3 indices", where));
      mesh.faces.push_back(f);
    }
  }
  try {
    validate(mesh);
    if (is_watertight(mesh)) check_consistent_winding(mesh);
  } catch (const Error& e) {
    throw Error(fmt::format("{}: {}", source_name, e.what()));
  }
  return mesh;
}

Mesh read_obj(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_obj(in, path.string());
}

void write_obj(std::ostream& out, const Mesh& mesh) {
  std::string buffer;
  buffer.reserve(mesh.vertices.size() * 64 + mesh.faces.size() * 24);
  for (const Vec3& v : mesh.vertices) {
    buffer += fmt::format("v {:.17g} {:.17g} {:.17g}\n", v.x(), v.y(), v.z());
  }
  for (const Face& f : mesh.faces) {
    buffer += fmt::format("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1);
  }
  out << buffer;
}

void write_obj(const std::filesystem::path& path, const Mesh& mesh) {
  std::ofstream out = open_out(path);
  write_obj(out, mesh);
  if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

VertexMask read_mask(const std::filesystem::path& path, std::size_t expected_vertices) {
  std::ifstream in = open_in(path);
  std::vector<std::uint8_t> flags;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    const std::string_view tok = next_token(line);
    if (tok == "0" || tok == "1") {
      flags.push_back(tok == "1" ? 1 : 0);
    } else {
      throw Error(fmt::format("{}:{}: expected 0 or 1, got '{}'", path.string(), line_no, tok));
    }
  }
  if (expected_vertices != 0 && flags.size() != expected_vertices) {
    throw Error(fmt::format("{}: mask has {} lines but the mesh has {} vertices",
                            path.string(), flags.size(), expected_vertices));
  }
  return VertexMask(std::move(flags));
}

void write_mask(const std::filesystem::path& path, const VertexMask& mask) {
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < mask.size(); ++i) out << (mask[i] ? "1\n" : "0\n");
}

}  // namespace topofit
