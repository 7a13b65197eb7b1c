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

#include "vecmap/vddl.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vecmap
{
namespace
{

void check_pair(const MapInstance & pred, const MapInstance & gt)
{
  if (pred.points.size() != gt.points.size()) {
    throw InvalidInput(
      "vddl: point count mismatch (pred " + std::to_string(pred.points.size()) + ", gt " +
      std::to_string(gt.points.size()) + ")");
  }
  if (pred.topology != gt.topology) {
    throw InvalidInput("vddl: topology mismatch between pred and gt");
  }
  validate(pred);
  validate(gt);
}

// The norm product is floored at eps, so a zero-length vector gives 0 while
// any product above eps leaves the cosine exactly scale-free.
double guarded_cosine(Point2 u, Point2 g, double eps)
{
  const double c = dot(u, g) / std::max(norm(u) * norm(g), eps);
  return std::clamp(c, -1.0, 1.0);
}

// d/du of guarded_cosine(u, g), ignoring the rounding clamp. Zero for a zero-length u.
Point2 guarded_cosine_grad(Point2 u, Point2 g, double eps)
{
  const double nu = norm(u);
  if (nu == 0.0) {
    return {0.0, 0.0};
  }
  const double ng = norm(g);
  const double product = nu * ng;
  if (product < eps) {
    return {g.x / eps, g.y / eps};
  }
  const double a = 1.0 / product;
  const double b = dot(u, g) * ng / (nu * product * product);
  return {a * g.x - b * u.x, a * g.y - b * u.y};
}

std::size_t segment_end(std::size_t s, std::size_t n_points) { return (s + 1) % n_points; }

}  // namespace

void validate(const VddlConfig & cfg)
{
  if (!(cfg.epsilon > 0.0)) throw InvalidInput("vddl: epsilon must be > 0");
  if (!(cfg.lambda_l1 >= 0.0)) throw InvalidInput("vddl: lambda_l1 must be >= 0");
  if (!(cfg.lambda_vddl >= 0.0)) throw InvalidInput("vddl: lambda_vddl must be >= 0");
}

std::vector<double> segment_cosines(
  const MapInstance & pred, const MapInstance & gt, const VddlConfig & cfg)
{
  check_pair(pred, gt);
  const auto ps = segment_vectors(pred);
  const auto gs = segment_vectors(gt);
  std::vector<double> out(ps.size());
  for (std::size_t s = 0; s < ps.size(); ++s) {
    out[s] = guarded_cosine(ps[s], gs[s], cfg.epsilon);
  }
  return out;
}

std::vector<double> gt_turn_cosines(const MapInstance & gt, const VddlConfig & cfg)
{
  const auto gs = segment_vectors(gt);
  const std::size_t n = gt.points.size();
  std::vector<double> out(n, 1.0);
  if (gt.topology == Topology::closed) {
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = guarded_cosine(gs[(j + n - 1) % n], gs[j], cfg.epsilon);
    }
  } else {
    for (std::size_t j = 1; j + 1 < n; ++j) {
      out[j] = guarded_cosine(gs[j - 1], gs[j], cfg.epsilon);
    }
  }
  return out;
}

std::vector<double> point_weights(const MapInstance & gt, const VddlConfig & cfg)
{
  const auto turn = gt_turn_cosines(gt, cfg);
  const std::size_t n = turn.size();
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const bool endpoint = gt.topology == Topology::open && (j == 0 || j + 1 == n);
    w[j] = endpoint ? 1.0 : std::exp((1.0 - turn[j]) / 2.0);
  }
  return w;
}

LossBreakdown vddl_loss(const MapInstance & pred, const MapInstance & gt, const VddlConfig & cfg)
{
  validate(cfg);
  LossBreakdown out;
  out.segment_cos = segment_cosines(pred, gt, cfg);
  out.gt_turn_cos = gt_turn_cosines(gt, cfg);
  out.point_weights = point_weights(gt, cfg);
  const std::size_t n = gt.points.size();
  double total = 0.0;
  for (std::size_t s = 0; s < out.segment_cos.size(); ++s) {
    const double pair_weight = out.point_weights[s] + out.point_weights[segment_end(s, n)];
    total += (1.0 - out.segment_cos[s]) * pair_weight;
  }
  out.total = total;
  out.grad = vddl_grad(pred, gt, cfg);
  return out;
}

std::vector<Point2> vddl_grad(
  const MapInstance & pred, const MapInstance & gt, const VddlConfig & cfg)
{
  validate(cfg);
  check_pair(pred, gt);
  const auto ps = segment_vectors(pred);
  const auto gs = segment_vectors(gt);
  const auto w = point_weights(gt, cfg);
  const std::size_t n = pred.points.size();
  std::vector<Point2> grad(n);
  for (std::size_t s = 0; s < ps.size(); ++s) {
    const std::size_t end = segment_end(s, n);
    const double pair_weight = w[s] + w[end];
    const Point2 dcos = guarded_cosine_grad(ps[s], gs[s], cfg.epsilon);
    // segment s = P[end] - P[s]
    const Point2 d_seg = -pair_weight * dcos;
    grad[end] = grad[end] + d_seg;
    grad[s] = grad[s] - d_seg;
  }
  return grad;
}

CombinedLoss combined_loss(
  const MapInstance & pred, const MapInstance & gt, const VddlConfig & cfg)
{
  const LossBreakdown direction = vddl_loss(pred, gt, cfg);
  const std::size_t n = pred.points.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  auto sign = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };

  CombinedLoss out;
  out.l1 = l1_cost(pred.points, gt.points) * inv_n;
  out.vddl = direction.total;
  out.total = cfg.lambda_l1 * out.l1 + cfg.lambda_vddl * out.vddl;
  out.grad.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Point2 r = pred.points[j] - gt.points[j];
    const Point2 g_l1{sign(r.x) * inv_n, sign(r.y) * inv_n};
    out.grad[j] = cfg.lambda_l1 * g_l1 + cfg.lambda_vddl * direction.grad[j];
  }
  return out;
}

}  // namespace vecmap
