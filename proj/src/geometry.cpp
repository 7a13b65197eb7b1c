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

#include "vecmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vecmap
{

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

double norm(Point2 a) { return std::hypot(a.x, a.y); }

std::string_view to_string(MapClass c)
{
  switch (c) {
    case MapClass::divider:
      return "divider";
    case MapClass::pedestrian_crossing:
      return "pedestrian_crossing";
    case MapClass::boundary:
      return "boundary";
  }
  return "unknown";
}

std::string_view to_string(Topology t)
{
  return t == Topology::open ? "open" : "closed";
}

MapClass parse_map_class(std::string_view name)
{
  for (MapClass c : kAllClasses) {
    if (to_string(c) == name) {
      return c;
    }
  }
  throw InvalidInput("unknown map class '" + std::string(name) + "'");
}

Topology parse_topology(std::string_view name)
{
  if (name == "open") return Topology::open;
  if (name == "closed") return Topology::closed;
  throw InvalidInput("unknown topology '" + std::string(name) + "'");
}

void validate(const MapInstance & inst)
{
  if (inst.points.size() < 2) {
    throw InvalidInput(
      "instance needs at least 2 points, got " + std::to_string(inst.points.size()));
  }
  for (const auto & p : inst.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidInput("instance contains a non-finite coordinate");
    }
  }
  if (inst.confidence && !(*inst.confidence >= 0.0 && *inst.confidence <= 1.0)) {
    throw InvalidInput("confidence outside [0, 1]");
  }
}

std::vector<Point2> segment_vectors(const MapInstance & inst)
{
  const auto & pts = inst.points;
  if (pts.size() < 2) {
    throw InvalidInput(
      "segment_vectors: instance needs at least 2 points, got " + std::to_string(pts.size()));
  }
  std::vector<Point2> segs;
  segs.reserve(pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    segs.push_back(pts[i + 1] - pts[i]);
  }
  if (inst.topology == Topology::closed) {
    segs.push_back(pts.front() - pts.back());
  }
  return segs;
}

double arc_length(const MapInstance & inst)
{
  double total = 0.0;
  for (const auto & s : segment_vectors(inst)) {
    total += norm(s);
  }
  return total;
}

double directed_mean_distance(std::span<const Point2> from, std::span<const Point2> to)
{
  double sum = 0.0;
  for (const auto & p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto & q : to) {
      best = std::min(best, norm(p - q));
    }
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

double chamfer_distance(std::span<const Point2> a, std::span<const Point2> b)
{
  if (a.empty() || b.empty()) {
    throw InvalidInput("chamfer_distance: point lists must be non-empty");
  }
  // Swapping the arguments only swaps the two addends.
  const double ab = directed_mean_distance(a, b);
  const double ba = directed_mean_distance(b, a);
  return ab + ba;
}

MapInstance resample(const MapInstance & inst, std::size_t n)
{
  if (n < 2) {
    throw InvalidInput("resample: n must be >= 2, got " + std::to_string(n));
  }
  const auto segs = segment_vectors(inst);
  std::vector<double> cumulative(segs.size() + 1, 0.0);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    cumulative[i + 1] = cumulative[i] + norm(segs[i]);
  }
  const double total = cumulative.back();
  const bool closed = inst.topology == Topology::closed;
  const double step = total / static_cast<double>(closed ? n : n - 1);

  MapInstance out = inst;
  out.points.clear();
  out.points.reserve(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0) {
      out.points.push_back(inst.points.front());
      continue;
    }
    if (!closed && k == n - 1) {
      out.points.push_back(inst.points.back());
      continue;
    }
    const double target = step * static_cast<double>(k);
    while (seg + 1 < segs.size() && cumulative[seg + 1] < target) {
      ++seg;
    }
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double t = len > 0.0 ? std::clamp((target - cumulative[seg]) / len, 0.0, 1.0) : 0.0;
    out.points.push_back(inst.points[seg] + t * segs[seg]);
  }
  return out;
}

double l1_cost(std::span<const Point2> a, std::span<const Point2> b)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::abs(a[i].x - b[i].x) + std::abs(a[i].y - b[i].y);
  }
  return sum;
}

std::vector<std::vector<Point2>> equivalent_orderings(const MapInstance & gt)
{
  const auto & pts = gt.points;
  const std::size_t n = pts.size();
  std::vector<std::vector<Point2>> orders;
  if (gt.topology == Topology::open) {
    orders.push_back(pts);
    orders.emplace_back(pts.rbegin(), pts.rend());
    return orders;
  }
  orders.reserve(2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Point2> fwd(n);
    std::vector<Point2> rev(n);
    for (std::size_t k = 0; k < n; ++k) {
      fwd[k] = pts[(k + r) % n];
      rev[k] = pts[(r + n - k) % n];
    }
    orders.push_back(std::move(fwd));
    orders.push_back(std::move(rev));
  }
  return orders;
}

MapInstance canonicalize_gt_order(const MapInstance & pred, const MapInstance & gt)
{
  if (pred.points.size() != gt.points.size()) {
    throw InvalidInput(
      "canonicalize_gt_order: point count mismatch (" + std::to_string(pred.points.size()) +
      " vs " + std::to_string(gt.points.size()) + ")");
  }
  if (pred.topology != gt.topology) {
    throw InvalidInput("canonicalize_gt_order: topology mismatch");
  }
  auto orders = equivalent_orderings(gt);
  std::size_t best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const double cost = l1_cost(pred.points, orders[i]);
    if (cost < best_cost) {
      best_cost = cost;
      best = i;
    }
  }
  MapInstance out = gt;
  out.points = std::move(orders[best]);
  return out;
}

}  // namespace vecmap
