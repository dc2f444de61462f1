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

#include "topofit/inside.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "topofit/parallel.hpp"

namespace topofit {

InsideTester::InsideTester(Mesh mesh) : mesh_(std::move(mesh)) {
  validate(mesh_);
  if (!is_watertight(mesh_)) throw Error("inside test requires a watertight mesh");
}

double InsideTester::winding_number(const Vec3& p) const {
  double total = 0.0;
  for (const Face& t : mesh_.faces) {
    const Vec3 a = mesh_.vertices[t[0]] - p;
    const Vec3 b = mesh_.vertices[t[1]] - p;
    const Vec3 c = mesh_.vertices[t[2]] - p;
    const double la = a.norm(), lb = b.norm(), lc = c.norm();
    const double det = a.dot(b.cross(c));
    const double div = la * lb * lc + a.dot(b) * lc + b.dot(c) * la + c.dot(a) * lb;
    total += 2.0 * std::atan2(det, div);
  }
  return total / (4.0 * std::numbers::pi);
}

bool point_inside(const Mesh& mesh, const Vec3& p) { return InsideTester(mesh).contains(p); }

namespace {

// Sign of the 2D edge function of edge (a -> b) at point p in the (y, z)
// plane, evaluated on the canonically ordered edge so both faces sharing the
// edge see bit-identical magnitudes. Zeros are broken by perturbing p by
// (eps, eps^2).
int edge_sign(const Vec3& a, const Vec3& b, int ia, int ib, double py, double pz, double* value) {
  const bool flip = ib < ia;
  const Vec3& s = flip ? b : a;
  const Vec3& e = flip ? a : b;
  const double dy = e.y() - s.y();
  const double dz = e.z() - s.z();
  double v = dy * (pz - s.z()) - dz * (py - s.y());
  int sign = (v > 0.0) - (v < 0.0);
  if (sign == 0) {
    // d/dpy = -dz, d/dpz = dy
    sign = (-dz > 0.0) - (-dz < 0.0);
    if (sign == 0) sign = (dy > 0.0) - (dy < 0.0);
  }
  if (flip) {
    v = -v;
    sign = -sign;
  }
  *value = v;
  return sign;
}

}  // namespace

std::vector<std::uint8_t> InsideTester::classify_grid(GridResolution resolution,
                                                      const Aabb& box) const {
  const int nx = resolution[0], ny = resolution[1], nz = resolution[2];
  if (nx < 2 || ny < 2 || nz < 2) throw Error("grid resolution must be >= 2 per axis");
  const Vec3 h(box.extent().x() / (nx - 1), box.extent().y() / (ny - 1),
               box.extent().z() / (nz - 1));

  // Crossing x-coordinates per (j, k) scanline.
  std::vector<std::vector<double>> crossings(static_cast<std::size_t>(ny) * nz);
  for (const Face& t : mesh_.faces) {
    const Vec3& a = mesh_.vertices[t[0]];
    const Vec3& b = mesh_.vertices[t[1]];
    const Vec3& c = mesh_.vertices[t[2]];
    const double ylo = std::min({a.y(), b.y(), c.y()}), yhi = std::max({a.y(), b.y(), c.y()});
    const double zlo = std::min({a.z(), b.z(), c.z()}), zhi = std::max({a.z(), b.z(), c.z()});
    const int j0 = std::max(0, static_cast<int>(std::ceil((ylo - box.min.y()) / h.y())) - 1);
    const int j1 = std::min(ny - 1, static_cast<int>(std::floor((yhi - box.min.y()) / h.y())) + 1);
    const int k0 = std::max(0, static_cast<int>(std::ceil((zlo - box.min.z()) / h.z())) - 1);
    const int k1 = std::min(nz - 1, static_cast<int>(std::floor((zhi - box.min.z()) / h.z())) + 1);
    for (int k = k0; k <= k1; ++k) {
      const double pz = box.min.z() + k * h.z();
      for (int j = j0; j <= j1; ++j) {
        const double py = box.min.y() + j * h.y();
        double wa = 0.0, wb = 0.0, wc = 0.0;
        const int sa = edge_sign(b, c, t[1], t[2], py, pz, &wa);
        const int sb = edge_sign(c, a, t[2], t[0], py, pz, &wb);
        const int sc = edge_sign(a, b, t[0], t[1], py, pz, &wc);
        if (sa != sb || sb != sc) continue;
        const double sum = wa + wb + wc;
        double x = 0.0;
        if (sum != 0.0) {
          x = (wa * a.x() + wb * b.x() + wc * c.x()) / sum;
        } else {
          x = (a.x() + b.x() + c.x()) / 3.0;
        }
        crossings[static_cast<std::size_t>(j) + static_cast<std::size_t>(ny) * k].push_back(x);
      }
    }
  }

  std::vector<std::uint8_t> labels(static_cast<std::size_t>(nx) * ny * nz, 0);
  parallel_for(crossings.size(), [&](std::size_t row) {
    auto& xs = crossings[row];
    std::sort(xs.begin(), xs.end());
    std::size_t passed = 0;
    for (int i = 0; i < nx; ++i) {
      const double px = box.min.x() + i * h.x();
      while (passed < xs.size() && xs[passed] < px) ++passed;
      labels[static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * row] = (passed % 2) ? 1 : 0;
    }
  });
  return labels;
}

}  // namespace topofit
