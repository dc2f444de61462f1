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

#include "topofit/camera.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <fmt/core.h>

namespace topofit {

Camera Camera::identity(Projection mode) {
  Camera c;
  c.mode = mode;
  return c;
}

void Camera::validate() const {
  const double ortho_err = (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (!(ortho_err <= 1e-9)) {
    throw Error(fmt::format("camera rotation is not orthonormal (max |R^T R - I| = {:g})", ortho_err));
  }
  if (!(std::abs(rotation.determinant() - 1.0) <= 1e-9)) {
    throw Error("camera rotation must have determinant +1");
  }
  if (!translation.allFinite()) throw Error("camera translation is not finite");
  if (mode == Projection::Perspective && (focal.x() == 0.0 || focal.y() == 0.0)) {
    throw Error("perspective camera needs nonzero focal lengths");
  }
}

std::optional<Vec3> Camera::try_project(const Vec3& world) const {
  const Vec3 c = to_camera(world);
  if (mode == Projection::Orthogonal) return c;
  if (!(c.z() > 0.0)) return std::nullopt;
  return Vec3(focal.x() * c.x() / c.z() + principal.x(),
              focal.y() * c.y() / c.z() + principal.y(), c.z());
}

Vec3 Camera::project(const Vec3& world) const {
  auto uvz = try_project(world);
  if (!uvz) {
    throw Error(fmt::format("point ({:g}, {:g}, {:g}) is behind the perspective camera",
                            world.x(), world.y(), world.z()));
  }
  return *uvz;
}

Vec3 Camera::unproject(const Vec3& uvz) const {
  if (mode == Projection::Orthogonal) return to_world(uvz);
  const double z = uvz.z();
  const Vec3 c((uvz.x() - principal.x()) * z / focal.x(),
               (uvz.y() - principal.y()) * z / focal.y(), z);
  return to_world(c);
}

Mat3 Camera::projection_jacobian(const Vec3& world) const {
  if (mode == Projection::Orthogonal) return rotation;
  const Vec3 c = to_camera(world);
  Mat3 dproj = Mat3::Zero();
  const double iz = 1.0 / c.z();
  dproj(0, 0) = focal.x() * iz;
  dproj(0, 2) = -focal.x() * c.x() * iz * iz;
  dproj(1, 1) = focal.y() * iz;
  dproj(1, 2) = -focal.y() * c.y() * iz * iz;
  dproj(2, 2) = 1.0;
  return dproj * rotation;
}

std::string to_string(Projection mode) {
  return mode == Projection::Orthogonal ? "orthogonal" : "perspective";
}

void write_camera(std::ostream& out, const Camera& camera) {
  const Mat3& r = camera.rotation;
  out << fmt::format("rotation = {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g}\n",
                     r(0, 0), r(0, 1), r(0, 2), r(1, 0), r(1, 1), r(1, 2), r(2, 0), r(2, 1), r(2, 2));
  out << fmt::format("translation = {:.17g} {:.17g} {:.17g}\n", camera.translation.x(),
                     camera.translation.y(), camera.translation.z());
  out << "mode = " << to_string(camera.mode) << "\n";
  out << fmt::format("focal = {:.17g} {:.17g}\n", camera.focal.x(), camera.focal.y());
  out << fmt::format("principal = {:.17g} {:.17g}\n", camera.principal.x(), camera.principal.y());
}

void write_camera(const std::filesystem::path& path, const Camera& camera) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  write_camera(out, camera);
}

Camera read_camera(std::istream& in, const std::string& source_name) {
  Camera cam;
  std::string line;
  std::size_t line_no = 0;
  auto numbers = [&](const std::string& rest, std::size_t expected, const std::string& key) {
    std::istringstream ss(rest);
    std::vector<double> values;
    double v = 0.0;
    while (ss >> v) values.push_back(v);
    if (!ss.eof() || values.size() != expected) {
      throw Error(fmt::format("{}:{}: key '{}' needs {} numbers", source_name, line_no, key, expected));
    }
    return values;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(fmt::format("{}:{}: expected 'key = value'", source_name, line_no));
    }
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    const std::string rest = line.substr(eq + 1);
    if (key == "rotation") {
      const auto v = numbers(rest, 9, key);
      for (int i = 0; i < 9; ++i) cam.rotation(i / 3, i % 3) = v[static_cast<std::size_t>(i)];
    } else if (key == "translation") {
      const auto v = numbers(rest, 3, key);
      cam.translation = Vec3(v[0], v[1], v[2]);
    } else if (key == "focal") {
      const auto v = numbers(rest, 2, key);
      cam.focal = {v[0], v[1]};
    } else if (key == "principal") {
      const auto v = numbers(rest, 2, key);
      cam.principal = {v[0], v[1]};
    } else if (key == "mode") {
      std::istringstream ss(rest);
      std::string mode;
      ss >> mode;
      if (mode == "orthogonal") {
        cam.mode = Projection::Orthogonal;
      } else if (mode == "perspective") {
        cam.mode = Projection::Perspective;
      } else {
        throw Error(fmt::format("{}:{}: unknown projection mode '{}'", source_name, line_no, mode));
      }
    } else {
      throw Error(fmt::format("{}:{}: unknown key '{}'", source_name, line_no, key));
    }
  }
  try {
    cam.validate();
  } catch (const Error& e) {
    throw Error(fmt::format("{}: {}", source_name, e.what()));
  }
  return cam;
}

Camera read_camera(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}' for reading", path.string()));
  return read_camera(in, path.string());
}

}  // namespace topofit
