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

#include "vecmap/synth.hpp"

#include "vecmap/matching.hpp"
#include "vecmap/tensor.hpp"
#include "vecmap/vddl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vecmap
{
namespace
{

constexpr double kMargin = 1.0;
constexpr std::size_t kDenseSamples = 400;

MapInstance open_curve(
  MapClass label, double x_center, double amplitude, double y_start, double y_end,
  const std::vector<double> & coeffs, std::size_t n)
{
  MapInstance dense;
  dense.label = label;
  dense.topology = Topology::open;
  for (std::size_t k = 0; k < kDenseSamples; ++k) {
    const double t = -1.0 + 2.0 * static_cast<double>(k) / (kDenseSamples - 1);
    double dev = 0.0;
    double tp = 1.0;
    for (double a : coeffs) {
      tp *= t;
      dev += a * tp;
    }
    const double y = y_start + (y_end - y_start) * (t + 1.0) / 2.0;
    dense.points.push_back({x_center + amplitude * dev, y});
  }
  return resample(dense, n);
}

MapInstance rectangle(MapClass label, Point2 center, double half_w, double half_h, std::size_t n)
{
  MapInstance rect;
  rect.label = label;
  rect.topology = Topology::closed;
  rect.points = {
    {center.x - half_w, center.y - half_h},
    {center.x + half_w, center.y - half_h},
    {center.x + half_w, center.y + half_h},
    {center.x - half_w, center.y + half_h}};
  return resample(rect, n);
}

Point2 unit_normal(const MapInstance & inst, std::size_t j)
{
  const auto & p = inst.points;
  const std::size_t n = p.size();
  Point2 tangent;
  if (inst.topology == Topology::closed) {
    tangent = p[(j + 1) % n] - p[(j + n - 1) % n];
  } else if (j == 0) {
    tangent = p[1] - p[0];
  } else if (j + 1 == n) {
    tangent = p[n - 1] - p[n - 2];
  } else {
    tangent = p[j + 1] - p[j - 1];
  }
  const double len = norm(tangent);
  if (len == 0.0) return {0.0, 0.0};
  return {-tangent.y / len, tangent.x / len};
}

MapInstance spurious_instance(const Extent & extent, std::size_t n, SeededRng & rng)
{
  const auto label = kAllClasses[rng.below(3)];
  const Point2 center{
    rng.uniform(extent.x_min + 5.0, extent.x_max - 5.0),
    rng.uniform(extent.y_min + 8.0, extent.y_max - 8.0)};
  if (label == MapClass::pedestrian_crossing) {
    return rectangle(label, center, rng.uniform(2.0, 4.0), rng.uniform(1.0, 2.0), n);
  }
  const double heading = rng.uniform(0.0, 6.283185307179586);
  const double half_len = rng.uniform(2.5, 7.5);
  const Point2 dir{std::cos(heading), std::sin(heading)};
  MapInstance seg;
  seg.label = label;
  seg.topology = Topology::open;
  seg.points = {center - half_len * dir, center + half_len * dir};
  return resample(seg, n);
}

}  // namespace

void validate(const SceneConfig & cfg)
{
  const auto & e = cfg.extent;
  if (!(e.x_max - e.x_min > 2.0 * kMargin) || !(e.y_max - e.y_min > 2.0 * kMargin)) {
    throw InvalidInput("scene extent is degenerate");
  }
  if (cfg.points_per_instance < 2) {
    throw InvalidInput("points_per_instance must be >= 2");
  }
}

void validate(const JitterConfig & cfg)
{
  if (!(cfg.sigma >= 0.0)) throw InvalidInput("jitter sigma must be >= 0");
  if (!(cfg.drop_rate >= 0.0 && cfg.drop_rate <= 1.0)) {
    throw InvalidInput("drop_rate must be in [0, 1]");
  }
  if (!(cfg.spurious_rate >= 0.0)) throw InvalidInput("spurious_rate must be >= 0");
}

Scene generate_scene(const SceneConfig & cfg)
{
  validate(cfg);
  SeededRng rng(cfg.seed);
  const Extent & e = cfg.extent;
  const std::size_t n = cfg.points_per_instance;
  Scene scene;
  scene.frame_id = cfg.frame_id;
  scene.extent = e;

  const std::size_t n_open = cfg.n_dividers + cfg.n_boundaries;
  if (n_open > 0) {
    const double usable = (e.x_max - e.x_min) - 2.0 * kMargin;
    const double spacing = usable / static_cast<double>(n_open);
    const double amplitude = std::clamp(0.25 * (spacing - 2.0), 0.0, 1.0);
    std::vector<std::size_t> lanes(n_open);
    std::iota(lanes.begin(), lanes.end(), 0);
    for (std::size_t i = n_open; i > 1; --i) {
      std::swap(lanes[i - 1], lanes[rng.below(i)]);
    }
    const double y_room = (e.y_max - e.y_min) - 2.0 * kMargin;
    for (std::size_t k = 0; k < n_open; ++k) {
      const bool divider = k < cfg.n_dividers;
      const double x_center = e.x_min + kMargin + spacing * (static_cast<double>(lanes[k]) + 0.5);
      const double y_start = e.y_min + kMargin + rng.uniform(0.0, 0.2) * y_room;
      const double y_end = e.y_max - kMargin - rng.uniform(0.0, 0.2) * y_room;
      // |sum of coeffs| <= 1 keeps the lateral deviation within +-amplitude.
      std::vector<double> coeffs;
      const std::size_t degree = divider ? 2 : 3;
      const double bound = 1.0 / static_cast<double>(degree);
      for (std::size_t d = 0; d < degree; ++d) coeffs.push_back(rng.uniform(-bound, bound));
      scene.instances.push_back(open_curve(
        divider ? MapClass::divider : MapClass::boundary, x_center, amplitude, y_start, y_end,
        coeffs, n));
    }
  }

  if (cfg.n_crossings > 0) {
    const double band = ((e.y_max - e.y_min) - 2.0 * kMargin) / static_cast<double>(cfg.n_crossings);
    const double x_room = (e.x_max - e.x_min) - 2.0 * kMargin;
    for (std::size_t k = 0; k < cfg.n_crossings; ++k) {
      const double half_h = std::min(rng.uniform(1.5, 2.5), 0.3 * band);
      const double half_w = std::min(rng.uniform(3.0, 6.0), 0.4 * x_room);
      const double band_center = e.y_min + kMargin + band * (static_cast<double>(k) + 0.5);
      const double slack_y = std::max(0.0, 0.5 * band - half_h - 1.0);
      const double slack_x = std::max(0.0, 0.5 * x_room - half_w);
      const Point2 center{
        0.5 * (e.x_min + e.x_max) + rng.uniform(-slack_x, slack_x),
        band_center + rng.uniform(-slack_y, slack_y)};
      scene.instances.push_back(
        rectangle(MapClass::pedestrian_crossing, center, half_w, half_h, n));
    }
  }
  return scene;
}

Scene perturb(const Scene & scene, const JitterConfig & cfg)
{
  validate(cfg);
  SeededRng rng(cfg.seed);
  Scene out;
  out.frame_id = scene.frame_id;
  out.extent = scene.extent;
  const double confidence = std::clamp(std::exp(-cfg.sigma), 0.05, 1.0);

  for (const auto & inst : scene.instances) {
    const bool dropped = rng.uniform() < cfg.drop_rate;
    MapInstance moved = inst;
    for (std::size_t j = 0; j < inst.points.size(); ++j) {
      if (cfg.mode == JitterMode::gaussian) {
        const double dx = rng.normal();
        const double dy = rng.normal();
        moved.points[j] = inst.points[j] + cfg.sigma * Point2{dx, dy};
      } else {
        const double side = j % 2 == 0 ? 1.0 : -1.0;
        moved.points[j] = inst.points[j] + (side * cfg.sigma) * unit_normal(inst, j);
      }
    }
    if (dropped) continue;
    moved.confidence = confidence;
    out.instances.push_back(std::move(moved));
  }

  const double whole = std::floor(cfg.spurious_rate);
  std::size_t n_spurious = static_cast<std::size_t>(whole);
  if (rng.uniform() < cfg.spurious_rate - whole) ++n_spurious;
  const std::size_t n_points =
    scene.instances.empty() ? kDefaultPointsPerInstance : scene.instances.front().points.size();
  for (std::size_t k = 0; k < n_spurious; ++k) {
    MapInstance extra = spurious_instance(scene.extent, n_points, rng);
    extra.confidence = std::clamp(0.5 * confidence, 0.05, 1.0);
    out.instances.push_back(std::move(extra));
  }
  return out;
}

std::vector<SweepRow> jitter_sweep(
  const SceneConfig & cfg, const std::vector<double> & sigmas, std::size_t trials)
{
  if (trials < 1) throw InvalidInput("jitter_sweep: trials must be >= 1");
  std::vector<SweepRow> rows;
  for (double sigma : sigmas) {
    SweepRow row;
    row.sigma = sigma;
    row.trials = trials;
    double vddl_sum = 0.0;
    double map_sum = 0.0;
    double acd_sum = 0.0;
    std::size_t acd_count = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      SceneConfig trial_cfg = cfg;
      trial_cfg.seed = cfg.seed + t;
      const Scene gt = generate_scene(trial_cfg);
      JitterConfig jitter;
      jitter.sigma = sigma;
      jitter.seed = SeededRng(trial_cfg.seed).next_u64();
      const Scene pred = perturb(gt, jitter);

      double trial_vddl = 0.0;
      for (std::size_t i = 0; i < gt.instances.size(); ++i) {
        const auto canonical = canonicalize_gt_order(pred.instances[i], gt.instances[i]);
        trial_vddl += vddl_loss(pred.instances[i], canonical).total;
      }
      if (!gt.instances.empty()) trial_vddl /= static_cast<double>(gt.instances.size());
      vddl_sum += trial_vddl;

      const EvalReport report = evaluate({pred}, {gt});
      map_sum += report.map;
      if (report.acd) {
        acd_sum += *report.acd;
        ++acd_count;
      }
    }
    row.mean_vddl = vddl_sum / static_cast<double>(trials);
    row.mean_map = map_sum / static_cast<double>(trials);
    if (acd_count > 0) row.mean_acd = acd_sum / static_cast<double>(acd_count);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vecmap
