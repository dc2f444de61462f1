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

#include "topofit/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "topofit/parallel.hpp"

namespace topofit {

ImageWindow ImageWindow::fit(const std::vector<const Mesh*>& meshes, const Camera& camera,
                             int size, double margin) {
  if (size < 1) throw Error(fmt::format("image size {} must be positive", size));
  double umin = std::numeric_limits<double>::infinity(), vmin = umin;
  double umax = -umin, vmax = -umin;
  for (const Mesh* mesh : meshes) {
    for (const Vec3& p : mesh->vertices) {
      const Vec3 uvz = camera.project(p);
      umin = std::min(umin, uvz.x());
      umax = std::max(umax, uvz.x());
      vmin = std::min(vmin, uvz.y());
      vmax = std::max(vmax, uvz.y());
    }
  }
  if (!(umin <= umax)) throw Error("cannot fit an image window around empty meshes");
  double side = std::max(umax - umin, vmax - vmin);
  if (!(side > 0.0)) side = 1.0;
  side *= 1.0 + 2.0 * margin;
  ImageWindow w;
  w.size = size;
  w.step = side / size;
  w.u0 = 0.5 * (umin + umax) - 0.5 * side;
  w.v0 = 0.5 * (vmin + vmax) - 0.5 * side;
  return w;
}

NormalImage render_normals(const Mesh& mesh, const Camera& camera, const ImageWindow& window) {
  if (window.size < 1) throw Error("image window has no pixels");
  const std::vector<Vec3> world_normals = vertex_normals(mesh);
  const std::size_t nv = mesh.vertex_count();
  std::vector<Vec3> uvz(nv), normals(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    uvz[i] = camera.project(mesh.vertices[i]);
    normals[i] = camera.rotation * world_normals[i];
  }

  const int size = window.size;
  NormalImage image;
  image.size = size;
  image.normal.assign(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), Vec3::Zero());
  image.covered.assign(image.normal.size(), 0);
  std::vector<double> depth(image.normal.size(), std::numeric_limits<double>::infinity());

  // Each thread owns a band of rows and scans every face, so the z-test
  // order per pixel is the face order regardless of the thread count.
  parallel_ranges(static_cast<std::size_t>(size), [&](std::size_t row_begin, std::size_t row_end) {
    for (const Face& f : mesh.faces) {
      const Vec3& a = uvz[static_cast<std::size_t>(f[0])];
      const Vec3& b = uvz[static_cast<std::size_t>(f[1])];
      const Vec3& c = uvz[static_cast<std::size_t>(f[2])];
      const double area = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
      if (area == 0.0) continue;
      const double lo_v = std::min({a.y(), b.y(), c.y()}), hi_v = std::max({a.y(), b.y(), c.y()});
      const double lo_u = std::min({a.x(), b.x(), c.x()}), hi_u = std::max({a.x(), b.x(), c.x()});
      const int y0 = std::max(static_cast<int>(row_begin),
                              static_cast<int>(std::ceil((lo_v - window.v0) / window.step - 0.5)));
      const int y1 = std::min(static_cast<int>(row_end) - 1,
                              static_cast<int>(std::floor((hi_v - window.v0) / window.step - 0.5)));
      const int x0 = std::max(0, static_cast<int>(std::ceil((lo_u - window.u0) / window.step - 0.5)));
      const int x1 = std::min(size - 1,
                              static_cast<int>(std::floor((hi_u - window.u0) / window.step - 0.5)));
      for (int y = y0; y <= y1; ++y) {
        const double v = window.v0 + (y + 0.5) * window.step;
        for (int x = x0; x <= x1; ++x) {
          const double u = window.u0 + (x + 0.5) * window.step;
          const double w0 = ((b.x() - u) * (c.y() - v) - (b.y() - v) * (c.x() - u)) / area;
          const double w1 = ((c.x() - u) * (a.y() - v) - (c.y() - v) * (a.x() - u)) / area;
          const double w2 = 1.0 - w0 - w1;
          if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
          const double z = w0 * a.z() + w1 * b.z() + w2 * c.z();
          const std::size_t p = static_cast<std::size_t>(y) * static_cast<std::size_t>(size) +
                                static_cast<std::size_t>(x);
          if (z >= depth[p]) continue;
          depth[p] = z;
          Vec3 n = w0 * normals[static_cast<std::size_t>(f[0])] +
                   w1 * normals[static_cast<std::size_t>(f[1])] +
                   w2 * normals[static_cast<std::size_t>(f[2])];
          const double len = n.norm();
          if (len > 0.0) n /= len;
          image.normal[p] = 0.5 * (n + Vec3::Ones());
          image.covered[p] = 1;
        }
      }
    }
  });
  return image;
}

}  // namespace topofit
