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

#ifndef VECMAP__GEOMETRY_HPP_
#define VECMAP__GEOMETRY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vecmap
{

/// Raised when an instance or point list violates its structural contract.
class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Planar BEV point in meters.
struct Point2
{
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double k, Point2 a) { return {k * a.x, k * a.y}; }
  friend bool operator==(const Point2 &, const Point2 &) = default;
};

double dot(Point2 a, Point2 b);
double norm(Point2 a);

enum class MapClass { divider, pedestrian_crossing, boundary };
enum class Topology { open, closed };

inline constexpr MapClass kAllClasses[] = {
  MapClass::divider, MapClass::pedestrian_crossing, MapClass::boundary};

std::string_view to_string(MapClass c);
std::string_view to_string(Topology t);
/// Throws InvalidInput on unknown names.
MapClass parse_map_class(std::string_view name);
Topology parse_topology(std::string_view name);

/**
 * @brief One map element: an ordered point sequence.
 *
 * Closed instances do not repeat the first point at the end; the closing
 * segment is implicit.
 */
struct MapInstance
{
  MapClass label = MapClass::divider;
  std::vector<Point2> points;
  Topology topology = Topology::open;
  std::optional<double> confidence;  // predictions only, in [0, 1]

  friend bool operator==(const MapInstance &, const MapInstance &) = default;
};

/// Throws InvalidInput if the instance breaks its invariants.
void validate(const MapInstance & inst);

struct Extent
{
  double x_min = -15.0;
  double y_min = -30.0;
  double x_max = 15.0;
  double y_max = 30.0;

  bool contains(Point2 p) const
  {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  friend bool operator==(const Extent &, const Extent &) = default;
};

struct Scene
{
  std::string frame_id;
  Extent extent;
  std::vector<MapInstance> instances;

  friend bool operator==(const Scene &, const Scene &) = default;
};

inline constexpr std::size_t kDefaultPointsPerInstance = 20;

/// Segment i is points[i+1] - points[i]; closed instances get the wrap segment last.
std::vector<Point2> segment_vectors(const MapInstance & inst);

/// Length of the polyline, including the wrap segment for closed instances.
double arc_length(const MapInstance & inst);

/**
 * @brief Bidirectional chamfer distance.
 *
 * Mean nearest-neighbour distance from a to b plus mean nearest-neighbour
 * distance from b to a. Symmetric bit-for-bit.
 */
double chamfer_distance(std::span<const Point2> a, std::span<const Point2> b);

/// Directed mean nearest-neighbour distance from `from` to `to`.
double directed_mean_distance(std::span<const Point2> from, std::span<const Point2> to);

/**
 * @brief Resample to n points at equal arc-length spacing.
 *
 * Open instances keep both endpoints. Closed instances are walked around the
 * loop starting at point 0, giving n points spaced perimeter / n apart.
 */
MapInstance resample(const MapInstance & inst, std::size_t n);

/// Sum over points of |dx| + |dy|.
double l1_cost(std::span<const Point2> a, std::span<const Point2> b);

/**
 * @brief All point orderings that describe the same shape as gt.
 *
 * Open: identity then reversal. Closed: for each rotation r = 0..N-1 the
 * forward ordering then the reverse ordering, where forward r maps k to
 * gt[(k + r) % N] and reverse r maps k to gt[(r - k) mod N].
 */
std::vector<std::vector<Point2>> equivalent_orderings(const MapInstance & gt);

/// The equivalent ordering of gt closest to pred in L1; earliest wins ties.
MapInstance canonicalize_gt_order(const MapInstance & pred, const MapInstance & gt);

}  // namespace vecmap

#endif  // VECMAP__GEOMETRY_HPP_
