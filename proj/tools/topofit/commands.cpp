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

#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>

#include <fmt/core.h>

#include "topofit/autoencoder.hpp"
#include "topofit/bake.hpp"
#include "topofit/bce.hpp"
#include "topofit/bench.hpp"
#include "topofit/camera.hpp"
#include "topofit/checkpoint.hpp"
#include "topofit/grid_field.hpp"
#include "topofit/inside.hpp"
#include "topofit/marching_cubes.hpp"
#include "topofit/mesh_io.hpp"
#include "topofit/metrics.hpp"
#include "topofit/registration.hpp"
#include "topofit/sampling.hpp"
#include "topofit/scene.hpp"
#include "topofit/subdivide.hpp"

namespace topofit::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

fs::path with_suffix(const fs::path& p, const std::string& suffix) {
  fs::path out = p;
  out += suffix;
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  out << text;
  if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

Vec3 parse_vec3(const std::string& text, const std::string& what) {
  std::string s = text;
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream ss(s);
  Vec3 v;
  if (!(ss >> v.x() >> v.y() >> v.z()) || !(ss >> std::ws).eof()) {
    throw Error(fmt::format("{} must be three comma-separated numbers, got '{}'", what, text));
  }
  return v;
}

GridResolution cube(int n) { return {n, n, n}; }

/// Grid files are indexed in camera coordinates when a camera is given.
struct LoadedField {
  Camera camera = Camera::identity();
  std::unique_ptr<ImplicitField> field;
};

LoadedField load_field(const std::string& grid_path, const std::string& camera_path) {
  LoadedField out;
  if (!camera_path.empty()) out.camera = read_camera(fs::path(camera_path));
  out.field = std::make_unique<PixelAlignedField>(out.camera, read_grid(fs::path(grid_path)));
  return out;
}

// --- registration options shared by `register` and `bench` -------------------

struct RegistrationOptions {
  int iterations = 500;
  double lr = 0.002;
  double lambda_sdf = 10.0;
  double lambda_lap = 1e4;
  double lambda_norm = 50.0;
  double sigma = 0.5;
  std::string scale = "per-vertex";
  double tolerance = 0.0;
  bool free_xyz = false;
  int mc_res = 256;
  std::string mask;

  void add(CLI::App* sub) {
    sub->add_option("--iters", iterations, "optimizer iterations")->check(CLI::PositiveNumber);
    sub->add_option("--lr", lr, "Adam learning rate");
    sub->add_option("--lambda-sdf", lambda_sdf, "data term weight");
    sub->add_option("--lambda-lap", lambda_lap, "Laplacian regularizer weight");
    sub->add_option("--lambda-norm", lambda_norm, "offset magnitude regularizer weight");
    sub->add_option("--sigma", sigma, "target iso level");
    sub->add_option("--regularizer-scale", scale, "per-vertex or sum")
        ->check(CLI::IsMember({"per-vertex", "sum"}));
    sub->add_option("--tolerance", tolerance, "relative early-exit tolerance (0: off)");
    sub->add_option("--mc-res", mc_res, "marching cubes resolution for the Chamfer baseline")
        ->check(CLI::Range(2, 2048));
    sub->add_option("--mask", mask, "per-vertex 0/1 optimizable mask");
  }

  RegistrationConfig config(const Mesh& mesh) const {
    RegistrationConfig c;
    c.iterations = iterations;
    c.adam.learning_rate = lr;
    c.lambda_sdf = lambda_sdf;
    c.lambda_lap = lambda_lap;
    c.lambda_norm = lambda_norm;
    c.sigma = sigma;
    c.regularizer_scale = regularizer_scale_from_string(scale);
    c.tolerance = tolerance;
    c.free_xyz = free_xyz;
    if (!mask.empty()) c.mask = read_mask(fs::path(mask), mesh.vertex_count());
    c.validate(mesh.vertex_count());
    return c;
  }
};

void put_loss(KeyValues& kv, const std::string& prefix, const LossBreakdown& l) {
  kv.set(prefix + ".total", num(l.total));
  kv.set(prefix + ".data", num(l.data));
  kv.set(prefix + ".laplacian", num(l.laplacian));
  kv.set(prefix + ".norm", num(l.norm));
}

// --- commands ----------------------------------------------------------------

Command add_synth(CLI::App& app) {
  struct Opts {
    std::string kind = "ellipsoid";
    std::string out;
    double radius = 0.5;
    std::string semi_axes = "0.5,0.5,0.55";
    double amplitude = 0.03;
    int degree = 8;
    int template_level = 4;
    int target_level = 5;
    int res = 128;
    double half_extent = 0.8;
    double width = kDefaultOccupancyWidth;
    std::string source = "analytic";
    std::uint64_t seed = 0;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("synth", "generate a synthetic scene directory");
  sub->add_option("--kind", o->kind, "sphere, ellipsoid, bumpy-sphere or capsule-chain");
  sub->add_option("--out", o->out, "output directory")->required();
  sub->add_option("--radius", o->radius, "base radius");
  sub->add_option("--semi-axes", o->semi_axes, "ellipsoid semi-axes a,b,c");
  sub->add_option("--amplitude", o->amplitude, "bumpy-sphere displacement amplitude");
  sub->add_option("--degree", o->degree, "bumpy-sphere band limit")->check(CLI::Range(0, 15));
  sub->add_option("--template-level", o->template_level, "icosphere level of the template");
  sub->add_option("--target-level", o->target_level, "icosphere level of the reference");
  sub->add_option("--res", o->res, "field grid resolution per axis")->check(CLI::Range(2, 2048));
  sub->add_option("--half-extent", o->half_extent, "field box half extent");
  sub->add_option("--width", o->width, "occupancy transition width");
  sub->add_option("--source", o->source, "analytic or baked")
      ->check(CLI::IsMember({"analytic", "baked"}));
  sub->add_option("--seed", o->seed, "random seed");

  Command cmd;
  cmd.app = sub;
  cmd.manifest_path = [o] { return fs::path(o->out) / "manifest.txt"; };
  cmd.run = [o] {
    SceneParams p;
    p.kind = scene_kind_from_string(o->kind);
    p.radius = o->radius;
    p.semi_axes = parse_vec3(o->semi_axes, "--semi-axes");
    p.amplitude = o->amplitude;
    p.degree = o->degree;
    p.template_level = o->template_level;
    p.target_level = o->target_level;
    p.grid = cube(o->res);
    p.half_extent = o->half_extent;
    p.width = o->width;
    p.source = o->source == "baked" ? FieldSource::Baked : FieldSource::Analytic;
    p.seed = o->seed;
    const auto start = Clock::now();
    const SyntheticScene scene = generate_scene(p);
    const fs::path dir(o->out);
    fs::create_directories(dir);
    write_obj(dir / "target.obj", scene.target);
    write_obj(dir / "template.obj", scene.template_mesh);
    write_grid(dir / "field.grid", scene.field);
    write_camera(dir / "camera.txt", scene.camera);
    write_mask(dir / "mask.txt", VertexMask(scene.template_mesh.vertex_count(), true));
    KeyValues kv;
    kv.set("result.target_vertices", std::to_string(scene.target.vertex_count()));
    kv.set("result.template_vertices", std::to_string(scene.template_mesh.vertex_count()));
    kv.set("timing.seconds", num(seconds_since(start)));
    return kv;
  };
  return cmd;
}

Command add_extract(CLI::App& app) {
  struct Opts {
    std::string field, camera, out;
    int res = 128;
    double iso = 0.5;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("extract", "marching cubes on a grid field");
  sub->add_option("--field", o->field, "grid field file")->required();
  sub->add_option("--camera", o->camera, "camera file (grid indexed in camera space)");
  sub->add_option("--res", o->res, "sampling resolution per axis")->check(CLI::Range(2, 2048));
  sub->add_option("--iso", o->iso, "iso level in (0, 1)");
  sub->add_option("--out", o->out, "output OBJ")->required();
  Command cmd;
  cmd.app = sub;
  cmd.manifest_path = [o] { return with_suffix(o->out, ".manifest"); };
  cmd.run = [o] {
    const LoadedField f = load_field(o->field, o->camera);
    const auto start = Clock::now();
    const Mesh mesh = marching_cubes(*f.field, cube(o->res), o->iso, f.field->bounds());
    const double t = seconds_since(start);
    write_obj(fs::path(o->out), mesh);
    KeyValues kv;
    kv.set("result.vertices", std::to_string(mesh.vertex_count()));
    kv.set("result.faces", std::to_string(mesh.face_count()));
    kv.set("timing.seconds", num(t));
    return kv;
  };
  return cmd;
}

Command add_bake(CLI::App& app) {
  struct Opts {
    std::string mesh, out;
    int res = 64;
    double pad = 0.1;
    bool raw = false;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("bake", "occupancy grid from a watertight mesh");
  sub->add_option("--mesh", o->mesh, "watertight OBJ")->required();
  sub->add_option("--res", o->res, "grid resolution per axis")->check(CLI::Range(2, 2048));
  sub->add_option("--pad", o->pad, "box padding as a fraction of the mesh extent");
  sub->add_flag("--raw", o->raw, "skip the smoothing pass");
  sub->add_option("--out", o->out, "output grid file")->required();
  Command cmd;
  cmd.app = sub;
  cmd.manifest_path = [o] { return with_suffix(o->out, ".manifest"); };
  cmd.run = [o] {
    const Mesh mesh = read_obj(fs::path(o->mesh));
    const Aabb box = Aabb::of(mesh.vertices).expanded(o->pad);
    const auto start = Clock::now();
    const GridField grid = bake_field(mesh, cube(o->res), box, !o->raw);
    const double t = seconds_since(start);
    write_grid(fs::path(o->out), grid);
    KeyValues kv;
    kv.set("timing.seconds", num(t));
    return kv;
  };
  return cmd;
}

Command add_sample(CLI::App& app) {
  struct Opts {
    std::string mesh, out, field, camera;
    std::size_t count = 12000;
    double std_dev = 0.04;
    double ratio = 8.0;
    std::uint64_t seed = 0;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("sample", "labelled occupancy samples around a mesh");
  sub->add_option("--mesh", o->mesh, "watertight OBJ")->required();
  sub->add_option("--count", o->count, "total samples");
  sub->add_option("--std", o->std_dev, "near-surface noise standard deviation");
  sub->add_option("--ratio", o->ratio, "near-surface to uniform ratio");
  sub->add_option("--seed", o->seed, "random seed");
  sub->add_option("--field", o->field, "grid field to score with the weighted BCE");
  sub->add_option("--camera", o->camera, "camera of --field");
  sub->add_option("--out", o->out, "output batch file")->required();
  Command cmd;
  cmd.app = sub;
  cmd.manifest_path = [o] { return with_suffix(o->out, ".manifest"); };
  cmd.run = [o] {
    const Mesh mesh = read_obj(fs::path(o->mesh));
    SamplingConfig c;
    c.count = o->count;
    c.importance_std = o->std_dev;
    c.ratio = o->ratio;
    c.seed = o->seed;
    const auto start = Clock::now();
    const OccupancyBatch batch = sample_mixture(mesh, c);
    const double t = seconds_since(start);
    write_batch(fs::path(o->out), batch);
    KeyValues kv;
    kv.set("result.importance", std::to_string(batch.importance_count));
    kv.set("result.uniform", std::to_string(batch.uniform_count));
    kv.set("result.eta", num(batch.eta));
    if (!o->field.empty()) {
      const LoadedField f = load_field(o->field, o->camera);
      std::vector<double> pred(batch.samples.size());
      for (std::size_t i = 0; i < pred.size(); ++i) pred[i] = f.field->eval(batch.samples[i].point);
      const BceLoss loss = extended_bce(pred, batch);
      kv.set("result.bce", num(loss.value));
      kv.set("result.bce_degenerate", loss.degenerate ? "true" : "false");
    }
    kv.set("timing.seconds", num(t));
    return kv;
  };
  return cmd;
}

Command add_subdivide(CLI::App& app) {
  struct Opts {
    std::string mesh, mask, out, mask_out;
    int repeat = 1;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("subdivide", "midpoint subdivision");
  sub->add_option("--mesh", o->mesh, "input OBJ")->required();
  sub->add_option("--mask", o->mask, "optimizable mask to propagate");
  sub->add_option("--repeat", o->repeat, "number of passes")->check(CLI::Range(0, 8));
  sub->add_option("--out", o->out, "output OBJ")->required();
  sub->add_option("--mask-out", o->mask_out, "propagated mask output");
  Command cmd;
  cmd.app = sub;
  cmd.manifest_path = [o] { return with_suffix(o->out, ".manifest"); };
  cmd.run = [o] {
    if (o->mask.empty() != o->mask_out.empty()) {
      throw Error("--mask and --mask-out must be given together");
    }
    Mesh mesh = read_obj(fs::path(o->mesh));
    std::optional<VertexMask> mask;
    if (!o->mask.empty()) mask = read_mask(fs::path(o->mask), mesh.vertex_count());
    for (int r = 0; r < o->repeat; ++r) {
      Subdivision s = subdivide_midpoint(mesh);
      if (mask) mask = propagate_mask(s, *mask);
      mesh = std::move(s.mesh);
    }
    write_obj(fs::path(o->out), mesh);
    if (mask) write_mask(fs::path(o->mask_out), *mask);
    KeyValues kv;
    kv.set("result.vertices", std::to_string(mesh.vertex_count()));
    kv.set("result.faces", std::to_string(mesh.face_count()));
    return kv;
  };
  return cmd;
}

std::string registration_report(const std::string& mode, const RegistrationConfig& c,
                                 const RegistrationResult& r) {
  KeyValues kv;
  kv.set("mode", mode);
  kv.set("config.iterations", std::to_string(c.iterations));
  kv.set("config.lr", num(c.adam.learning_rate));
  kv.set("config.beta1", num(c.adam.beta1));
  kv.set("config.beta2", num(c.adam.beta2));
  kv.set("config.epsilon", num(c.adam.epsilon));
  kv.set("config.lambda_sdf", num(c.lambda_sdf));
  kv.set("config.lambda_lap", num(c.lambda_lap));
  kv.set("config.lambda_norm", num(c.lambda_norm));
  kv.set("config.sigma", num(c.sigma));
  kv.set("config.regularizer_scale", to_string(c.regularizer_scale));
  kv.set("config.tolerance", num(c.tolerance));
  kv.set("config.free_xyz", c.free_xyz ? "true" : "false");
  kv.set("config.optimizable", std::to_string(c.mask ? c.mask->count() : r.mesh.vertex_count()));
  kv.set("iterations", std::to_string(r.iterations));
  put_loss(kv, "initial", r.initial);
  put_loss(kv, "final", r.final_loss);
  if (mode == "chamfer") {
    kv.set("extracted.vertices", std::to_string(r.extracted_vertices));
    kv.set("extracted.faces", std::to_string(r.extracted_faces));
  }
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const LossBreakdown& l = r.trace[i];
    kv.set(fmt::format("trace.{}", i),
           fmt::format("{:.17g} {:.17g} {:.17g} {:.17g}", l.total, l.data, l.laplacian, l.norm));
  }
  kv.set("timing.extraction_s", num(r.extraction_seconds));
  kv.set("timing.optimization_s", num(r.optimization_seconds));
  kv.set("timing.total_s", num(r.total_seconds()));
  return kv.str();
}

Command add_register(CLI::App& app) {
  struct Opts {
    std::string mode = "implicit";
    std::string mesh, field, camera, out, report;
    RegistrationOptions reg;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("register", "refine a mesh against an occupancy grid");
  sub->add_option("--mode", o->mode, "implicit or chamfer")
      ->check(CLI::IsMember({"implicit", "chamfer"}));
  sub->add_option("--mesh", o->mesh, "template OBJ")->required();
  sub->add_option("--field", o->field, "grid field file")->required();
  sub->add_option("--camera", o->camera, "camera file")->required();
  o->reg.add(sub);
  sub->add_flag("--free-xyz", o->reg.free_xyz, "Chamfer baseline: free camera-space offsets");
  sub->add_option("--out", o->out, "refined OBJ")->required();
  sub->add_option("--report", o->report, "report file");
  Command cmd;
  cmd.app = sub;
  cmd.manifest_path = [o] { return with_suffix(o->out, ".manifest"); };
  cmd.run = [o] {
    if (o->reg.free_xyz && o->mode != "chamfer") throw Error("--free-xyz requires --mode chamfer");
    const Mesh mesh = read_obj(fs::path(o->mesh));
    const LoadedField f = load_field(o->field, o->camera);
    const RegistrationConfig c = o->reg.config(mesh);
    const RegistrationResult r = o->mode == "implicit"
                                     ? implicit_register(mesh, *f.field, f.camera, c)
                                     : chamfer_register(mesh, *f.field, f.camera, c, cube(o->reg.mc_res));
    write_obj(fs::path(o->out), r.mesh);
    if (!o->report.empty()) write_text(fs::path(o->report), registration_report(o->mode, c, r));
    KeyValues kv;
    put_loss(kv, "result.initial", r.initial);
    put_loss(kv, "result.final", r.final_loss);
    kv.set("timing.extraction_s", num(r.extraction_seconds));
    kv.set("timing.optimization_s", num(r.optimization_seconds));
    return kv;
  };
  return cmd;
}

Command add_metrics(CLI::App& app) {
  struct Opts {
    std::string recon, truth, camera, regressor, out;
    std::size_t points = 100000;
    std::uint64_t seed = 0;
    bool align = false;
    int normal_size = 512;
    int normal_views = 1;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("metrics", "P2S, Chamfer, normal, MPVPE and MPJPE");
  sub->add_option("--recon", o->recon, "reconstructed OBJ")->required();
  sub->add_option("--truth", o->truth, "ground-truth OBJ")->required();
  sub->add_option("--camera", o->camera, "camera for the normal projection error");
  sub->add_option("--regressor", o->regressor, "joint regressor triplets for MPJPE");
  sub->add_option("--points", o->points, "surface samples per direction");
  sub->add_option("--seed", o->seed, "sampling seed");
  sub->add_flag("--align", o->align, "align centroids before MPVPE/MPJPE");
  sub->add_option("--normal-size", o->normal_size, "normal image size")->check(CLI::Range(1, 8192));
  sub->add_option("--normal-views", o->normal_views, "normal views around the subject")
      ->check(CLI::Range(1, 64));
  sub->add_option("--out", o->out, "report file")->required();
  Command cmd;
  cmd.app = sub;
  cmd.manifest_path = [o] { return with_suffix(o->out, ".manifest"); };
  cmd.run = [o] {
    const Mesh recon = read_obj(fs::path(o->recon));
    const Mesh truth = read_obj(fs::path(o->truth));
    MetricsOptions m;
    m.points = o->points;
    m.seed = o->seed;
    m.align = o->align;
    m.normal.image_size = o->normal_size;
    m.normal.views = o->normal_views;
    std::optional<Camera> camera;
    if (!o->camera.empty()) camera = read_camera(fs::path(o->camera));
    std::optional<JointRegressor> reg;
    if (!o->regressor.empty()) reg = read_regressor(fs::path(o->regressor), recon.vertex_count());
    const auto start = Clock::now();
    const MetricsReport report =
        compute_metrics(recon, truth, m, camera ? &*camera : nullptr, reg ? &*reg : nullptr);
    const double t = seconds_since(start);
    write_text(fs::path(o->out), format_report(report));
    KeyValues kv;
    kv.set("timing.seconds", num(t));
    return kv;
  };
  return cmd;
}

Command add_bench(CLI::App& app) {
  struct Opts {
    std::string mesh, field, camera, reference, out, table;
    std::size_t points = 20000;
    std::uint64_t seed = 0;
    RegistrationOptions reg;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("bench", "time implicit registration against the Chamfer baseline");
  sub->add_option("--mesh", o->mesh, "template OBJ")->required();
  sub->add_option("--field", o->field, "grid field file")->required();
  sub->add_option("--camera", o->camera, "camera file")->required();
  sub->add_option("--reference", o->reference, "reference OBJ for P2S");
  o->reg.add(sub);
  sub->add_option("--points", o->points, "P2S samples");
  sub->add_option("--seed", o->seed, "P2S sampling seed");
  sub->add_option("--out", o->out, "report file")->required();
  sub->add_option("--table", o->table, "also write the timing table here");
  Command cmd;
  cmd.app = sub;
  cmd.manifest_path = [o] { return with_suffix(o->out, ".manifest"); };
  cmd.run = [o] {
    const Mesh mesh = read_obj(fs::path(o->mesh));
    const LoadedField f = load_field(o->field, o->camera);
    const RegistrationConfig c = o->reg.config(mesh);
    std::optional<Mesh> reference;
    if (!o->reference.empty()) reference = read_obj(fs::path(o->reference));
    BenchOptions b;
    b.p2s_points = o->points;
    b.seed = o->seed;
    const BenchReport r = bench_registration(mesh, *f.field, f.camera, c, cube(o->reg.mc_res),
                                             reference ? &*reference : nullptr, b);
    const std::string table = format_bench_table(r);
    fmt::print("{}", table);
    if (!o->table.empty()) write_text(fs::path(o->table), table);

    KeyValues kv;
    kv.set("mc_resolution", std::to_string(o->reg.mc_res));
    kv.set("vertices", std::to_string(r.vertices));
    kv.set("iterations", std::to_string(r.iterations));
    kv.set("same_faces", r.same_faces ? "true" : "false");
    for (const BenchRow* row : {&r.chamfer, &r.implicit}) {
      put_loss(kv, row->method + ".final", row->final_loss);
      if (row->p2s) kv.set(row->method + ".p2s_cm", num(100.0 * *row->p2s));
    }
    for (const BenchRow* row : {&r.chamfer, &r.implicit}) {
      kv.set("timing." + row->method + ".extraction_s", num(row->extraction_seconds));
      kv.set("timing." + row->method + ".optimization_s", num(row->optimization_seconds));
      kv.set("timing." + row->method + ".total_s", num(row->total_seconds));
    }
    write_text(fs::path(o->out), kv.str());
    KeyValues extras;
    extras.set("result.same_faces", r.same_faces ? "true" : "false");
    return extras;
  };
  return cmd;
}

struct DatasetOptions {
  std::size_t size = 200;
  int level = 3;
  double amplitude = 0.08;
  double bump_width = 0.6;
  std::uint64_t seed = 0;

  void add(CLI::App* sub) {
    sub->add_option("--dataset-size", size, "synthetic meshes");
    sub->add_option("--level", level, "icosphere level of the template")->check(CLI::Range(0, 6));
    sub->add_option("--amplitude", amplitude, "bump height range");
    sub->add_option("--bump-width", bump_width, "angular bump width (radians)");
    sub->add_option("--data-seed", seed, "dataset seed");
  }
  BumpDatasetConfig config() const {
    BumpDatasetConfig c;
    c.count = size;
    c.level = level;
    c.amplitude = amplitude;
    c.bump_width = bump_width;
    c.seed = seed;
    return c;
  }
};

Command add_gcn_train(CLI::App& app) {
  struct Opts {
    DatasetOptions data;
    AutoencoderConfig model;
    TrainConfig train;
    std::string out, trace;
  };
  auto o = std::make_shared<Opts>();
  o->train.learning_rate = 1e-4;
  o->train.weight_decay = 1e-4;
  o->train.epochs = 10;
  CLI::App* sub = app.add_subcommand("gcn-train", "train the mesh autoencoder on synthetic meshes");
  o->data.add(sub);
  sub->add_option("--channels", o->model.channels, "channels per residual block");
  sub->add_option("--bottleneck", o->model.bottleneck_channels, "channels before the latent map");
  sub->add_option("--latent", o->model.latent, "latent size");
  sub->add_option("--blocks", o->model.blocks, "residual blocks per side");
  sub->add_option("--order", o->model.order, "Chebyshev order");
  sub->add_option("--slope", o->model.slope, "leaky ReLU slope");
  sub->add_option("--epochs", o->train.epochs, "training epochs");
  sub->add_option("--lr", o->train.learning_rate, "Adam learning rate");
  sub->add_option("--weight-decay", o->train.weight_decay, "L2 weight decay");
  sub->add_option("--batch", o->train.batch_size, "minibatch size");
  sub->add_option("--final-lr-fraction", o->train.final_lr_fraction,
                  "cosine-annealed final learning rate as a fraction of --lr (1: constant)");
  sub->add_option("--seed", o->train.seed, "initialization and shuffling seed");
  sub->add_option("--out", o->out, "checkpoint path")->required();
  sub->add_option("--trace", o->trace, "per-epoch trace file");
  Command cmd;
  cmd.app = sub;
  cmd.manifest_path = [o] { return with_suffix(o->out, ".run.manifest"); };
  cmd.run = [o] {
    const BumpDatasetConfig dc = o->data.config();
    const std::vector<Mesh> dataset = make_bump_dataset(dc);
    AutoencoderConfig mc = o->model;
    mc.seed = o->train.seed;
    MeshAutoencoder model(bump_template(dc), mc);
    const auto start = Clock::now();
    const TrainTrace trace = train_autoencoder(model, dataset, o->train);
    const double t = seconds_since(start);
    save_checkpoint(fs::path(o->out), model);
    if (!o->trace.empty()) {
      KeyValues tr;
      tr.set("initial", fmt::format("{:.17g} {:.17g}", trace.initial.loss, trace.initial.mpvpe));
      for (const EpochStats& e : trace.epochs) {
        tr.set(fmt::format("epoch.{}", e.epoch), fmt::format("{:.17g} {:.17g}", e.loss, e.mpvpe));
      }
      tr.set("final", fmt::format("{:.17g} {:.17g}", trace.final.loss, trace.final.mpvpe));
      write_text(fs::path(o->trace), tr.str());
    }
    KeyValues kv;
    kv.set("result.initial_loss", num(trace.initial.loss));
    kv.set("result.final_loss", num(trace.final.loss));
    kv.set("result.final_mpvpe_mm", num(1000.0 * trace.final.mpvpe));
    kv.set("result.dataset_deviation_mm", num(1000.0 * mean_deviation(dataset, model.topology())));
    kv.set("timing.seconds", num(t));
    return kv;
  };
  return cmd;
}

Command add_gcn_eval(CLI::App& app) {
  struct Opts {
    DatasetOptions data;
    std::string checkpoint, out, mesh, out_mesh;
    bool mpvpe = false;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("gcn-eval", "evaluate an autoencoder checkpoint");
  o->data.add(sub);
  sub->add_option("--checkpoint", o->checkpoint, "checkpoint path")->required();
  sub->add_flag("--mpvpe", o->mpvpe, "report dataset MPVPE");
  sub->add_option("--mesh", o->mesh, "reconstruct this mesh");
  sub->add_option("--out-mesh", o->out_mesh, "where to write the reconstruction");
  sub->add_option("--out", o->out, "report file")->required();
  Command cmd;
  cmd.app = sub;
  cmd.manifest_path = [o] { return with_suffix(o->out, ".manifest"); };
  cmd.run = [o] {
    if (o->mesh.empty() != o->out_mesh.empty()) throw Error("--mesh and --out-mesh go together");
    const BumpDatasetConfig dc = o->data.config();
    const Mesh templ = bump_template(dc);
    const MeshAutoencoder model = load_checkpoint(fs::path(o->checkpoint), templ);
    KeyValues report;
    report.set("parameters", std::to_string(model.parameter_count()));
    if (o->mpvpe) {
      const std::vector<Mesh> dataset = make_bump_dataset(dc);
      const DatasetEvaluation e = evaluate_autoencoder(model, dataset);
      report.set("dataset_size", std::to_string(dataset.size()));
      report.set("loss", num(e.loss));
      report.set("mpvpe_mm", num(1000.0 * e.mpvpe));
      report.set("dataset_deviation_mm", num(1000.0 * mean_deviation(dataset, templ)));
    }
    if (!o->mesh.empty()) {
      const Mesh input = read_obj(fs::path(o->mesh));
      const Mesh out = model.reconstruct(input);
      write_obj(fs::path(o->out_mesh), out);
      report.set("mesh_mpvpe_mm", num(1000.0 * mpvpe(input, out)));
    }
    write_text(fs::path(o->out), report.str());
    return KeyValues{};
  };
  return cmd;
}

}  // namespace

std::vector<Command> add_commands(CLI::App& app) {
  return {add_extract(app),   add_bake(app),    add_sample(app),    add_subdivide(app),
          add_register(app),  add_metrics(app), add_bench(app),     add_gcn_train(app),
          add_gcn_eval(app),  add_synth(app)};
}

}  // namespace topofit::cli
