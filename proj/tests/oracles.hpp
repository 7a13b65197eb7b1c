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

// Independent reference computations for tests. Nothing here calls the code
// path it is used to check.

#ifndef VECMAP_TESTS__ORACLES_HPP_
#define VECMAP_TESTS__ORACLES_HPP_

#include "vecmap/geometry.hpp"
#include "vecmap/matching.hpp"
#include "vecmap/mpn.hpp"
#include "vecmap/tensor.hpp"
#include "vecmap/vddl.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace vecmap::testing
{

/// Random polyline with segment lengths in [0.5, 2.5] m and bounded turning.
MapInstance random_instance(SeededRng & rng, std::size_t n, Topology topology);

/// gt plus isotropic Gaussian noise of the given sigma on every point.
MapInstance jittered(const MapInstance & gt, double sigma, SeededRng & rng);

/// Central differences of f with respect to every coordinate of inst.points.
std::vector<Point2> finite_difference_grad(
  const std::function<double(const MapInstance &)> & f, const MapInstance & inst, double h);

/// ||a - b||_2 / max(||a||_2, ||b||_2), or ||a - b||_2 when both norms are below 1e-8.
double relative_error(const std::vector<Point2> & a, const std::vector<Point2> & b);

/// Loss written directly from the per-point reading: every point j sums
/// (1 - cos) over its adjacent segments, weighted by W_j.
double vddl_per_point_reference(const MapInstance & pred, const MapInstance & gt, double eps);

/**
 * @brief Slow evaluator: per class, per threshold, brute-force greedy matching
 * over an explicit distance matrix and PR interpolation by scanning every
 * prefix with integer recall comparisons.
 */
EvalReport brute_force_evaluate(const std::vector<Scene> & preds, const std::vector<Scene> & gts);

/// Straight-line MPN: direct loops, no shared helpers with the library.
TensorF reference_mpn_fused(const FeatureMap & f, const MpnConfig & cfg, const MpnParams & params);

}  // namespace vecmap::testing

#endif  // VECMAP_TESTS__ORACLES_HPP_
