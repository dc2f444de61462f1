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

#include "topofit/grid_field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/core.h>

#include "topofit/parallel.hpp"

namespace topofit {

static_assert(std::endian::native == std::endian::little,
              "grid I/O assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'T', 'P', 'F', 'G', 'R', 'I', 'D', '1'};

struct CellCoord {
  int i;
  double t;  // fractional position inside the cell, [0, 1]
};

CellCoord locate(double x, double lo, double h, int n) {
  const double s = (x - lo) / h;
  int i = static_cast<int>(std::floor(s));
  i = std::clamp(i, 0, n - 2);
  return {i, s - i};
}

}  // namespace

GridField::GridField(GridResolution resolution, Aabb box, std::vector<float> values)
    : resolution_(resolution), box_(box), values_(std::move(values)) {
  for (int a = 0; a < 3; ++a) {
    if (resolution_[a] < 2) {
      throw Error(fmt::format("grid resolution must be >= 2 per axis, got {} on axis {}",
                              resolution_[a], a));
    }
    if (!(box_.max[a] > box_.min[a])) {
      throw Error(fmt::format("grid box is empty on axis {}", a));
    }
  }
  const std::size_t expected = static_cast<std::size_t>(resolution_[0]) * resolution_[1] * resolution_[2];
  if (values_.size() != expected) {
    throw Error(fmt::format("grid expects {} values, got {}", expected, values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0f && values_[i] <= 1.0f)) {
      throw Error(fmt::format("grid value {} at index {} is outside [0, 1]", values_[i], i));
    }
  }
  for (int a = 0; a < 3; ++a) spacing_[a] = box_.extent()[a] / (resolution_[a] - 1);
}

GridField GridField::sample(const ImplicitField& field, GridResolution resolution, Aabb box) {
  const std::size_t nx = static_cast<std::size_t>(std::max(resolution[0], 0));
  const std::size_t ny = static_cast<std::size_t>(std::max(resolution[1], 0));
  const std::size_t nz = static_cast<std::size_t>(std::max(resolution[2], 0));
  if (nx < 2 || ny < 2 || nz < 2) throw Error("grid resolution must be >= 2 per axis");
  std::vector<float> values(nx * ny * nz);
  Vec3 h;
  for (int a = 0; a < 3; ++a) h[a] = box.extent()[a] / (resolution[a] - 1);
  parallel_for(nz, [&](std::size_t k) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        const Vec3 p = box.min + Vec3(static_cast<double>(i) * h.x(), static_cast<double>(j) * h.y(),
                                      static_cast<double>(k) * h.z());
        const double v = std::clamp(field.eval(p), 0.0, 1.0);
        values[i + nx * (j + ny * k)] = static_cast<float>(v);
      }
    }
  });
  return GridField(resolution, box, std::move(values));
}

Vec3 GridField::node(int i, int j, int k) const {
  return box_.min + Vec3(i * spacing_.x(), j * spacing_.y(), k * spacing_.z());
}

double GridField::eval(const Vec3& x) const {
  if (!box_.contains(x)) return 0.0;
  const CellCoord cx = locate(x.x(), box_.min.x(), spacing_.x(), resolution_[0]);
  const CellCoord cy = locate(x.y(), box_.min.y(), spacing_.y(), resolution_[1]);
  const CellCoord cz = locate(x.z(), box_.min.z(), spacing_.z(), resolution_[2]);
  const double c000 = at(cx.i, cy.i, cz.i), c100 = at(cx.i + 1, cy.i, cz.i);
  const double c010 = at(cx.i, cy.i + 1, cz.i), c110 = at(cx.i + 1, cy.i + 1, cz.i);
  const double c001 = at(cx.i, cy.i, cz.i + 1), c101 = at(cx.i + 1, cy.i, cz.i + 1);
  const double c011 = at(cx.i, cy.i + 1, cz.i + 1), c111 = at(cx.i + 1, cy.i + 1, cz.i + 1);
  const double c00 = c000 + cx.t * (c100 - c000);
  const double c10 = c010 + cx.t * (c110 - c010);
  const double c01 = c001 + cx.t * (c101 - c001);
  const double c11 = c011 + cx.t * (c111 - c011);
  const double c0 = c00 + cy.t * (c10 - c00);
  const double c1 = c01 + cy.t * (c11 - c01);
  return std::clamp(c0 + cz.t * (c1 - c0), 0.0, 1.0);
}

FieldSample GridField::eval_grad(const Vec3& x) const {
  if (!box_.contains(x)) return {};
  const CellCoord cx = locate(x.x(), box_.min.x(), spacing_.x(), resolution_[0]);
  const CellCoord cy = locate(x.y(), box_.min.y(), spacing_.y(), resolution_[1]);
  const CellCoord cz = locate(x.z(), box_.min.z(), spacing_.z(), resolution_[2]);
  const double c000 = at(cx.i, cy.i, cz.i), c100 = at(cx.i + 1, cy.i, cz.i);
  const double c010 = at(cx.i, cy.i + 1, cz.i), c110 = at(cx.i + 1, cy.i + 1, cz.i);
  const double c001 = at(cx.i, cy.i, cz.i + 1), c101 = at(cx.i + 1, cy.i, cz.i + 1);
  const double c011 = at(cx.i, cy.i + 1, cz.i + 1), c111 = at(cx.i + 1, cy.i + 1, cz.i + 1);
  const double tx = cx.t, ty = cy.t, tz = cz.t;

  const double c00 = c000 + tx * (c100 - c000);
  const double c10 = c010 + tx * (c110 - c010);
  const double c01 = c001 + tx * (c101 - c001);
  const double c11 = c011 + tx * (c111 - c011);
  const double c0 = c00 + ty * (c10 - c00);
  const double c1 = c01 + ty * (c11 - c01);

  FieldSample out;
  out.value = std::clamp(c0 + tz * (c1 - c0), 0.0, 1.0);

  const double dx00 = c100 - c000, dx10 = c110 - c010, dx01 = c101 - c001, dx11 = c111 - c011;
  const double dx0 = dx00 + ty * (dx10 - dx00);
  const double dx1 = dx01 + ty * (dx11 - dx01);
  out.gradient.x() = (dx0 + tz * (dx1 - dx0)) / spacing_.x();
  out.gradient.y() = ((c10 - c00) + tz * ((c11 - c01) - (c10 - c00))) / spacing_.y();
  out.gradient.z() = (c1 - c0) / spacing_.z();
  return out;
}

void write_grid(std::ostream& out, const GridField& grid) {
  out.write(kMagic, sizeof(kMagic));
  for (int a = 0; a < 3; ++a) {
    const auto n = static_cast<std::uint32_t>(grid.resolution()[a]);
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  }
  const Aabb box = grid.bounds();
  for (int a = 0; a < 3; ++a) out.write(reinterpret_cast<const char*>(&box.min[a]), sizeof(double));
  for (int a = 0; a < 3; ++a) out.write(reinterpret_cast<const char*>(&box.max[a]), sizeof(double));
  out.write(reinterpret_cast<const char*>(grid.values().data()),
            static_cast<std::streamsize>(grid.values().size() * sizeof(float)));
}

void write_grid(const std::filesystem::path& path, const GridField& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  write_grid(out, grid);
  if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

GridField read_grid(std::istream& in, const std::string& source_name) {
  std::size_t offset = 0;
  auto read_bytes = [&](void* dst, std::size_t n, const char* what) {
    in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
      throw Error(fmt::format("{}: truncated {} at byte offset {}", source_name, what, offset));
    }
    offset += n;
  };
  char magic[8];
  read_bytes(magic, sizeof(magic), "magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(fmt::format("{}: bad magic at byte offset 0 (expected TPFGRID1)", source_name));
  }
  GridResolution res{};
  for (int a = 0; a < 3; ++a) {
    std::uint32_t n = 0;
    read_bytes(&n, sizeof(n), "resolution");
    if (n < 2 || n > 4096) {
      throw Error(fmt::format("{}: resolution {} at byte offset {} out of range", source_name, n,
                              offset - sizeof(n)));
    }
    res[a] = static_cast<int>(n);
  }
  Aabb box;
  for (int a = 0; a < 3; ++a) read_bytes(&box.min[a], sizeof(double), "bbox");
  for (int a = 0; a < 3; ++a) read_bytes(&box.max[a], sizeof(double), "bbox");
  std::vector<float> values(static_cast<std::size_t>(res[0]) * res[1] * res[2]);
  read_bytes(values.data(), values.size() * sizeof(float), "values");
  try {
    return GridField(res, box, std::move(values));
  } catch (const Error& e) {
    throw Error(fmt::format("{}: {}", source_name, e.what()));
  }
}

GridField read_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}' for reading", path.string()));
  return read_grid(in, path.string());
}

PixelAlignedField::PixelAlignedField(Camera camera, GridField grid)
    : camera_(std::move(camera)), grid_(std::move(grid)) {
  camera_.validate();
}

double PixelAlignedField::eval(const Vec3& x) const {
  const auto uvz = camera_.try_project(x);
  return uvz ? grid_.eval(*uvz) : 0.0;
}

FieldSample PixelAlignedField::eval_grad(const Vec3& x) const {
  const auto uvz = camera_.try_project(x);
  if (!uvz) return {};
  const FieldSample g = grid_.eval_grad(*uvz);
  return {g.value, camera_.projection_jacobian(x).transpose() * g.gradient};
}

Aabb PixelAlignedField::bounds() const {
  const Aabb box = grid_.bounds();
  std::vector<Vec3> corners;
  for (int c = 0; c < 8; ++c) {
    const Vec3 uvz((c & 1) ? box.max.x() : box.min.x(), (c & 2) ? box.max.y() : box.min.y(),
                   (c & 4) ? box.max.z() : box.min.z());
    if (camera_.mode == Projection::Perspective && !(uvz.z() > 0.0)) continue;
    corners.push_back(camera_.unproject(uvz));
  }
  return Aabb::of(corners);
}

}  // namespace topofit
