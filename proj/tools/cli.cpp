// Copyright 2026 The vecmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include "vecmap/geometry.hpp"
#include "vecmap/iia.hpp"
#include "vecmap/matching.hpp"
#include "vecmap/mpn.hpp"
#include "vecmap/scene_io.hpp"
#include "vecmap/synth.hpp"
#include "vecmap/tensor.hpp"
#include "vecmap/vddl.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace vecmap::cli
{
namespace
{

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

/// Thrown by command bodies to leave with a specific exit code.
struct ExitError
{
  int code;
  std::string message;
};

void ensure_directory(const fs::path & dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ExitError{kUnwritable, "cannot create output directory '" + dir.string() + "'"};
  }
}

void write_or_fail(const fs::path & path, std::string_view text)
{
  try {
    write_text_file(path, text);
  } catch (const std::runtime_error & ex) {
    throw ExitError{kUnwritable, ex.what()};
  }
}

std::vector<Scene> read_dir_or_fail(const fs::path & dir)
{
  if (!fs::is_directory(dir)) {
    throw ExitError{kMalformed, "'" + dir.string() + "' is not a directory"};
  }
  try {
    return read_scene_dir(dir);
  } catch (const ParseError & ex) {
    throw ExitError{kMalformed, ex.what()};
  }
}

Scene read_file_or_fail(const fs::path & path)
{
  try {
    return read_scene_file(path);
  } catch (const ParseError & ex) {
    throw ExitError{kMalformed, ex.what()};
  }
}

std::string frame_name(std::size_t f) { return fmt::format("frame_{:04d}", f); }

// ---------------------------------------------------------------- gen

struct GenArgs
{
  std::uint64_t seed = 0;
  std::size_t dividers = 4;
  std::size_t boundaries = 2;
  std::size_t crossings = 2;
  std::size_t points = kDefaultPointsPerInstance;
  std::size_t frames = 1;
  std::string out;
};

int cmd_gen(const GenArgs & a, std::ostream & out)
{
  ensure_directory(a.out);
  for (std::size_t f = 0; f < a.frames; ++f) {
    SceneConfig cfg;
    cfg.seed = a.seed + f;
    cfg.n_dividers = a.dividers;
    cfg.n_boundaries = a.boundaries;
    cfg.n_crossings = a.crossings;
    cfg.points_per_instance = a.points;
    cfg.frame_id = frame_name(f);
    const Scene scene = generate_scene(cfg);
    write_or_fail(fs::path(a.out) / (cfg.frame_id + ".json"), emit_scene(scene));
    out << fmt::format(
      "{}: {} dividers, {} boundaries, {} crossings\n", cfg.frame_id, a.dividers, a.boundaries,
      a.crossings);
  }
  return kOk;
}

// ---------------------------------------------------------------- perturb

struct PerturbArgs
{
  std::string in;
  std::string out;
  double sigma = 0.1;
  std::string mode = "gaussian";
  double drop_rate = 0.0;
  double spurious_rate = 0.0;
  std::uint64_t seed = 0;
};

int cmd_perturb(const PerturbArgs & a, std::ostream & out)
{
  const auto scenes = read_dir_or_fail(a.in);
  ensure_directory(a.out);
  for (std::size_t f = 0; f < scenes.size(); ++f) {
    JitterConfig j;
    j.sigma = a.sigma;
    j.mode = a.mode == "gaussian" ? JitterMode::gaussian : JitterMode::alternating_perpendicular;
    j.drop_rate = a.drop_rate;
    j.spurious_rate = a.spurious_rate;
    j.seed = a.seed + f;
    const Scene pred = perturb(scenes[f], j);
    write_or_fail(fs::path(a.out) / (pred.frame_id + ".json"), emit_scene(pred));
    out << fmt::format(
      "{}: {} -> {} instances\n", pred.frame_id, scenes[f].instances.size(), pred.instances.size());
  }
  return kOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs
{
  std::string pred;
  std::string gt;
  std::string out;
  std::string format = "json";
};

int cmd_eval(const EvalArgs & a, std::ostream & out)
{
  const auto preds = read_dir_or_fail(a.pred);
  const auto gts = read_dir_or_fail(a.gt);
  EvalReport report;
  try {
    report = evaluate(preds, gts);
  } catch (const InvalidInput & ex) {
    throw ExitError{kMissingFrame, ex.what()};
  }
  const fs::path path(a.out);
  if (a.format == "csv") {
    write_or_fail(path, emit_report_csv(report));
  } else {
    write_or_fail(path, emit_report_json(report, gts.size()));
    fs::path companion = path;
    companion.replace_extension(".csv");
    write_or_fail(companion, emit_report_csv(report));
  }
  for (const auto & cls : report.classes) {
    out << fmt::format(
      "AP[{}] = {}\n", to_string(cls.label), cls.ap ? fmt::format("{:.4f}", *cls.ap) : "n/a");
  }
  out << fmt::format("mAP = {:.4f}\n", report.map);
  out << fmt::format("ACD = {}\n", report.acd ? fmt::format("{:.4f}", *report.acd) : "n/a");
  return kOk;
}

// ---------------------------------------------------------------- loss

struct LossArgs
{
  std::string pred;
  std::string gt;
  double lambda_l1 = 5.0;
  double lambda_vddl = 1.0;
  bool grad = false;
  std::string format = "json";
};

int cmd_loss(const LossArgs & a, std::ostream & out)
{
  const Scene pred = read_file_or_fail(a.pred);
  const Scene gt = read_file_or_fail(a.gt);
  VddlConfig cfg;
  cfg.lambda_l1 = a.lambda_l1;
  cfg.lambda_vddl = a.lambda_vddl;
  try {
    validate(cfg);
  } catch (const InvalidInput & ex) {
    throw ExitError{kUsage, ex.what()};
  }

  // Pair by class, then by order within the class.
  std::map<MapClass, std::vector<std::size_t>> pred_by_class;
  std::map<MapClass, std::vector<std::size_t>> gt_by_class;
  for (std::size_t i = 0; i < pred.instances.size(); ++i) pred_by_class[pred.instances[i].label].push_back(i);
  for (std::size_t i = 0; i < gt.instances.size(); ++i) gt_by_class[gt.instances[i].label].push_back(i);

  ojson rows = ojson::array();
  double sum_vddl = 0.0;
  double sum_l1 = 0.0;
  double sum_total = 0.0;
  for (MapClass label : kAllClasses) {
    const auto & ps = pred_by_class[label];
    const auto & gs = gt_by_class[label];
    if (ps.size() != gs.size()) {
      throw ExitError{
        kUnpairable, fmt::format(
                       "class {}: {} predicted vs {} ground-truth instances", to_string(label),
                       ps.size(), gs.size())};
    }
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const auto & p = pred.instances[ps[k]];
      const auto & g = gt.instances[gs[k]];
      if (p.points.size() != g.points.size() || p.topology != g.topology) {
        throw ExitError{
          kUnpairable, fmt::format(
                         "pred instance {} and gt instance {} differ in point count or topology",
                         ps[k], gs[k])};
      }
      const MapInstance canonical = canonicalize_gt_order(p, g);
      const CombinedLoss c = combined_loss(p, canonical, cfg);
      sum_vddl += c.vddl;
      sum_l1 += c.l1;
      sum_total += c.total;
      ojson row = {
        {"class", std::string(to_string(label))},
        {"pred_index", ps[k]},
        {"gt_index", gs[k]},
        {"vddl", c.vddl},
        {"l1", c.l1},
        {"combined", c.total}};
      if (a.grad) {
        ojson g_rows = ojson::array();
        for (const auto & v : c.grad) g_rows.push_back({v.x, v.y});
        row["grad"] = g_rows;
      }
      rows.push_back(row);
    }
  }

  if (a.format == "text") {
    for (const auto & r : rows) {
      out << fmt::format(
        "{} pred {} gt {}: vddl {:.10g} l1 {:.10g} combined {:.10g}\n",
        r["class"].get<std::string>(), r["pred_index"].get<std::size_t>(),
        r["gt_index"].get<std::size_t>(), r["vddl"].get<double>(), r["l1"].get<double>(),
        r["combined"].get<double>());
      if (r.contains("grad")) {
        for (const auto & g : r["grad"]) {
          out << fmt::format("  grad {:.10g} {:.10g}\n", g[0].get<double>(), g[1].get<double>());
        }
      }
    }
    out << fmt::format("total: vddl {:.10g} l1 {:.10g} combined {:.10g}\n", sum_vddl, sum_l1, sum_total);
    return kOk;
  }
  ojson doc;
  doc["lambda_l1"] = cfg.lambda_l1;
  doc["lambda_vddl"] = cfg.lambda_vddl;
  doc["instances"] = rows;
  doc["total"] = {{"vddl", sum_vddl}, {"l1", sum_l1}, {"combined", sum_total}};
  out << doc.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- gradcheck

struct GradcheckArgs
{
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t points = kDefaultPointsPerInstance;
  bool identical = false;
  std::string dump = "gradcheck_worst.json";
};

constexpr double kFiniteDifferenceStep = 1e-5;
constexpr double kGradTolerance = 1e-4;

MapInstance random_gt(SeededRng & rng, std::size_t n, Topology topology)
{
  MapInstance inst;
  inst.topology = topology;
  if (topology == Topology::closed) {
    inst.label = MapClass::pedestrian_crossing;
    const Point2 c{rng.uniform(-5.0, 5.0), rng.uniform(-10.0, 10.0)};
    for (std::size_t k = 0; k < n; ++k) {
      const double theta =
        2.0 * std::numbers::pi * (static_cast<double>(k) + rng.uniform(-0.3, 0.3)) / static_cast<double>(n);
      const double r = rng.uniform(3.0, 5.0);
      inst.points.push_back({c.x + r * std::cos(theta), c.y + r * std::sin(theta)});
    }
    return inst;
  }
  inst.label = MapClass::divider;
  Point2 p{rng.uniform(-5.0, 5.0), rng.uniform(-10.0, 10.0)};
  double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
  inst.points.push_back(p);
  for (std::size_t k = 1; k < n; ++k) {
    heading += rng.uniform(-0.8, 0.8);
    const double len = rng.uniform(0.5, 2.5);
    p = p + len * Point2{std::cos(heading), std::sin(heading)};
    inst.points.push_back(p);
  }
  return inst;
}

ojson points_json(const std::vector<Point2> & pts)
{
  ojson arr = ojson::array();
  for (const auto & p : pts) arr.push_back({p.x, p.y});
  return arr;
}

int cmd_gradcheck(const GradcheckArgs & a, std::ostream & out)
{
  if (a.trials < 1) throw ExitError{kUsage, "--trials must be >= 1"};
  SeededRng rng(a.seed);
  const VddlConfig cfg;
  double worst = -1.0;
  double max_grad_norm = 0.0;
  ojson worst_case;
  for (std::size_t t = 0; t < a.trials; ++t) {
    const Topology topo = t % 2 == 0 ? Topology::open : Topology::closed;
    const MapInstance gt = random_gt(rng, a.points, topo);
    MapInstance pred = gt;
    if (!a.identical) {
      for (auto & p : pred.points) p = p + 0.3 * Point2{rng.normal(), rng.normal()};
    }
    const auto analytic = vddl_grad(pred, gt, cfg);

    double diff2 = 0.0;
    double na2 = 0.0;
    double nf2 = 0.0;
    MapInstance probe = pred;
    for (std::size_t j = 0; j < pred.points.size(); ++j) {
      for (int axis = 0; axis < 2; ++axis) {
        double & coord = axis == 0 ? probe.points[j].x : probe.points[j].y;
        const double saved = coord;
        coord = saved + kFiniteDifferenceStep;
        const double up = vddl_loss(probe, gt, cfg).total;
        coord = saved - kFiniteDifferenceStep;
        const double down = vddl_loss(probe, gt, cfg).total;
        coord = saved;
        const double numeric = (up - down) / (2.0 * kFiniteDifferenceStep);
        const double exact = axis == 0 ? analytic[j].x : analytic[j].y;
        diff2 += (numeric - exact) * (numeric - exact);
        na2 += exact * exact;
        nf2 += numeric * numeric;
      }
    }
    const double scale = std::max(std::sqrt(na2), std::sqrt(nf2));
    const double rel = scale < 1e-8 ? std::sqrt(diff2) : std::sqrt(diff2) / scale;
    max_grad_norm = std::max(max_grad_norm, std::sqrt(na2));
    if (rel > worst) {
      worst = rel;
      worst_case = {
        {"trial", t},
        {"topology", std::string(to_string(topo))},
        {"relative_error", rel},
        {"pred", points_json(pred.points)},
        {"gt", points_json(gt.points)},
        {"analytic_grad", points_json(analytic)}};
    }
  }
  const bool pass = worst < kGradTolerance;
  out << fmt::format("trials: {}\n", a.trials);
  out << fmt::format("max relative error: {:.3e} (trial {})\n", worst, worst_case["trial"].get<std::size_t>());
  out << fmt::format("max analytic gradient norm: {:.3e}\n", max_grad_norm);
  out << fmt::format("tolerance: {:.0e}\n", kGradTolerance);
  out << (pass ? "PASS\n" : "FAIL\n");
  if (!pass) {
    write_or_fail(a.dump, worst_case.dump(2) + "\n");
    out << "worst case written to " << a.dump << "\n";
    return kCheckFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------- demo

struct DemoArgs
{
  std::string block;
  std::uint64_t seed = 0;
  std::size_t instances = 8;
  std::size_t points = 20;
  std::size_t channels = 0;  // 0 = block default
  std::size_t heads = 4;
  std::size_t height = 16;
  std::size_t width = 16;
  std::size_t layers = 2;
};

struct Check
{
  std::string name;
  bool pass;
  std::string detail;
};

int report_checks(const std::vector<Check> & checks, std::ostream & out)
{
  bool all = true;
  for (const auto & c : checks) {
    out << fmt::format("check {}: {}{}\n", c.name, c.pass ? "pass" : "FAIL", c.detail.empty() ? "" : " (" + c.detail + ")");
    all = all && c.pass;
  }
  for (const auto & c : checks) {
    if (!c.pass) out << "violated property: " << c.name << "\n";
  }
  return all ? kOk : kCheckFailed;
}

int demo_iia(const DemoArgs & a, std::ostream & out)
{
  IiaConfig cfg;
  cfg.n_instances = a.instances;
  cfg.n_points = a.points;
  cfg.channels = a.channels ? a.channels : 32;
  cfg.num_heads = a.heads;
  cfg.mlp_hidden = 2 * cfg.channels;
  validate(cfg);

  const IiaParams params = IiaParams::random(cfg, a.seed);
  SeededRng rng(a.seed + 1);
  const TensorF q_ins = random_uniform({cfg.n_instances, cfg.channels}, -1, 1, rng);
  const TensorF q_pos = random_uniform({cfg.n_points, cfg.channels}, -1, 1, rng);
  const HierEmbedding h = compose_queries(q_ins, q_pos);
  const HierEmbedding y = iia_forward(h, params);
  const auto hash = content_hash(y.tensor);

  std::vector<std::size_t> order(cfg.n_instances);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  const double equiv = max_abs_diff(
    iia_forward(permute_instances(h, order), params).tensor, permute_instances(y, order).tensor);

  const TensorF f_ins = instance_self_attention(h, params);
  const HierEmbedding base = point_self_attention(h, f_ins, params);
  HierEmbedding edited = h;
  for (std::size_t j = 0; j < cfg.n_points; ++j) {
    for (std::size_t c = 0; c < cfg.channels; ++c) edited.tensor(j, c) = 0.0;
  }
  const HierEmbedding after = point_self_attention(edited, f_ins, params);
  bool isolated = true;
  for (std::size_t r = cfg.n_points; r < cfg.n_instances * cfg.n_points; ++r) {
    for (std::size_t c = 0; c < cfg.channels; ++c) isolated = isolated && after.tensor(r, c) == base.tensor(r, c);
  }

  const auto rerun = content_hash(iia_forward(compose_queries(q_ins, q_pos), IiaParams::random(cfg, a.seed)).tensor);

  out << "block: iia\n";
  out << "input shape: " << shape_string(h.tensor.shape()) << "\n";
  out << "output shape: " << shape_string(y.tensor.shape()) << "\n";
  out << fmt::format("hash: {:016x}\n", hash);
  return report_checks(
    {{"shape_preserved", y.tensor.shape() == h.tensor.shape(), ""},
     {"instance_permutation_equivariance", equiv <= 1e-9, fmt::format("max diff {:.3e}", equiv)},
     {"point_stage_isolation", isolated, ""},
     {"deterministic", rerun == hash, ""}},
    out);
}

int demo_mpn(const DemoArgs & a, std::ostream & out)
{
  MpnConfig cfg;
  cfg.num_down_layers = a.layers;
  if (a.channels) cfg.in_channels = a.channels;
  validate(cfg);
  const MpnParams params = MpnParams::random(cfg, a.seed);
  SeededRng rng(a.seed + 1);
  const FeatureMap f{random_uniform({a.height, a.width, cfg.in_channels}, -1, 1, rng)};

  const MpnOutput train = mpn_forward(f, cfg, params);
  MpnConfig infer_cfg = cfg;
  infer_cfg.mode = MpnMode::infer;
  const MpnOutput infer = mpn_forward(f, infer_cfg, params);
  const auto hash = content_hash(infer.fused.tensor);
  const auto rerun = content_hash(mpn_forward(f, infer_cfg, MpnParams::random(cfg, a.seed)).fused.tensor);

  out << "block: mpn\n";
  out << "input shape: " << shape_string(f.tensor.shape()) << "\n";
  out << "fused shape: " << shape_string(train.fused.tensor.shape()) << "\n";
  out << fmt::format("train levels: {}\n", train.levels ? train.levels->size() : 0);
  out << fmt::format("hash: {:016x}\n", hash);
  return report_checks(
    {{"fused_spatial_dims", train.fused.height() == a.height && train.fused.width() == a.width, ""},
     {"infer_equals_train_fused", infer.fused.tensor == train.fused.tensor, ""},
     {"infer_has_no_levels", !infer.levels.has_value(), ""},
     {"train_level_count", train.levels && train.levels->size() == cfg.num_down_layers + 1, ""},
     {"deterministic", rerun == hash, ""}},
    out);
}

// ---------------------------------------------------------------- sweep

struct SweepArgs
{
  std::uint64_t seed = 0;
  std::vector<double> sigmas = {0.05, 0.1, 0.2, 0.4};
  std::size_t trials = 100;
  std::string out;
  std::string format = "csv";
};

std::string sweep_table(const std::vector<SweepRow> & rows, const std::string & format)
{
  if (format == "json") {
    ojson arr = ojson::array();
    for (const auto & r : rows) {
      arr.push_back({
        {"sigma", r.sigma},
        {"mean_vddl", r.mean_vddl},
        {"mean_map", r.mean_map},
        {"mean_acd", r.mean_acd ? ojson(*r.mean_acd) : ojson(nullptr)},
        {"trials", r.trials}});
    }
    return ojson{{"tool", kToolVersion}, {"rows", arr}}.dump(2) + "\n";
  }
  std::string s = "sigma,mean_vddl,mean_map,mean_acd,trials\n";
  for (const auto & r : rows) {
    s += fmt::format(
      "{},{},{},{},{}\n", format_number(r.sigma), format_number(r.mean_vddl), format_number(r.mean_map),
      r.mean_acd ? format_number(*r.mean_acd) : "", r.trials);
  }
  return s;
}

int cmd_sweep(const SweepArgs & a, std::ostream & out)
{
  SceneConfig cfg;
  cfg.seed = a.seed;
  const auto rows = jitter_sweep(cfg, a.sigmas, a.trials);
  const std::string table = sweep_table(rows, a.format);
  if (a.out.empty()) {
    out << table;
  } else {
    write_or_fail(a.out, table);
    out << table;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Vectorized map loss, evaluation and block demos", "vecmap"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  GenArgs gen;
  auto * gen_cmd = app.add_subcommand("gen", "Generate synthetic ground-truth scene files");
  gen_cmd->add_option("--seed", gen.seed, "Base seed; frame f uses seed + f");
  gen_cmd->add_option("--dividers", gen.dividers);
  gen_cmd->add_option("--boundaries", gen.boundaries);
  gen_cmd->add_option("--crossings", gen.crossings);
  gen_cmd->add_option("--points", gen.points, "Points per instance")->check(CLI::Range(2, 100000));
  gen_cmd->add_option("--frames", gen.frames)->check(CLI::Range(1, 100000));
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  PerturbArgs pert;
  auto * pert_cmd = app.add_subcommand("perturb", "Jitter scene files into prediction files");
  pert_cmd->add_option("--in", pert.in, "Ground-truth directory")->required();
  pert_cmd->add_option("--out", pert.out, "Output directory")->required();
  pert_cmd->add_option("--sigma", pert.sigma)->check(CLI::NonNegativeNumber);
  pert_cmd->add_option("--mode", pert.mode)->check(CLI::IsMember({"gaussian", "alternating"}));
  pert_cmd->add_option("--drop-rate", pert.drop_rate)->check(CLI::Range(0.0, 1.0));
  pert_cmd->add_option("--spurious-rate", pert.spurious_rate)->check(CLI::NonNegativeNumber);
  pert_cmd->add_option("--seed", pert.seed, "Base seed; frame f uses seed + f");

  EvalArgs ev;
  auto * eval_cmd = app.add_subcommand("eval", "Compute AP/mAP/ACD over aligned frame directories");
  eval_cmd->add_option("--pred", ev.pred, "Prediction directory")->required();
  eval_cmd->add_option("--gt", ev.gt, "Ground-truth directory")->required();
  eval_cmd->add_option("--out", ev.out, "Report path")->required();
  eval_cmd->add_option("--format", ev.format)->check(CLI::IsMember({"json", "csv"}));

  LossArgs loss;
  auto * loss_cmd = app.add_subcommand("loss", "VDDL, L1 and combined loss between two scene files");
  loss_cmd->add_option("--pred", loss.pred)->required();
  loss_cmd->add_option("--gt", loss.gt)->required();
  loss_cmd->add_option("--lambda-l1", loss.lambda_l1);
  loss_cmd->add_option("--lambda-vddl", loss.lambda_vddl);
  loss_cmd->add_flag("--grad", loss.grad, "Emit per-point gradients");
  loss_cmd->add_option("--format", loss.format)->check(CLI::IsMember({"json", "text"}));

  GradcheckArgs gc;
  auto * gc_cmd = app.add_subcommand("gradcheck", "Compare the analytic VDDL gradient with central differences");
  gc_cmd->add_option("--seed", gc.seed);
  gc_cmd->add_option("--trials", gc.trials);
  gc_cmd->add_option("--points", gc.points)->check(CLI::Range(2, 100000));
  gc_cmd->add_flag("--identical", gc.identical, "Use pred == gt");
  gc_cmd->add_option("--dump", gc.dump, "Where to write the worst case on failure");

  DemoArgs demo;
  auto * demo_cmd = app.add_subcommand("demo", "Run the iia or mpn block on seeded input and check its properties");
  demo_cmd->add_option("block", demo.block)->required()->check(CLI::IsMember({"iia", "mpn"}));
  demo_cmd->add_option("--seed", demo.seed);
  demo_cmd->add_option("--instances", demo.instances)->check(CLI::PositiveNumber);
  demo_cmd->add_option("--points", demo.points)->check(CLI::PositiveNumber);
  demo_cmd->add_option("--channels", demo.channels);
  demo_cmd->add_option("--heads", demo.heads)->check(CLI::PositiveNumber);
  demo_cmd->add_option("--height", demo.height)->check(CLI::Range(4, 4096));
  demo_cmd->add_option("--width", demo.width)->check(CLI::Range(4, 4096));
  demo_cmd->add_option("--layers", demo.layers)->check(CLI::Range(1, 3));

  SweepArgs sweep;
  auto * sweep_cmd = app.add_subcommand("sweep", "Jitter sweep: mean VDDL, mAP and ACD per sigma");
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--sigmas", sweep.sigmas)->delimiter(',');
  sweep_cmd->add_option("--trials", sweep.trials)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sweep.out);
  sweep_cmd->add_option("--format", sweep.format)->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> storage{"vecmap"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto & s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion &) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError & ex) {
    err << "error: " << ex.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*pert_cmd) return cmd_perturb(pert, out);
    if (*eval_cmd) return cmd_eval(ev, out);
    if (*loss_cmd) return cmd_loss(loss, out);
    if (*gc_cmd) return cmd_gradcheck(gc, out);
    if (*demo_cmd) return demo.block == "iia" ? demo_iia(demo, out) : demo_mpn(demo, out);
    if (*sweep_cmd) return cmd_sweep(sweep, out);
  } catch (const ExitError & ex) {
    err << "error: " << ex.message << "\n";
    return ex.code;
  } catch (const std::invalid_argument & ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace vecmap::cli
