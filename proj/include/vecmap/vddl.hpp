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

#ifndef VECMAP__VDDL_HPP_
#define VECMAP__VDDL_HPP_

#include "vecmap/geometry.hpp"

#include <vector>

namespace vecmap
{

struct VddlConfig
{
  double epsilon = 1e-8;  // floor for the norm product in every cosine
  double lambda_l1 = 5.0;
  double lambda_vddl = 1.0;
};

/// Throws InvalidInput if epsilon <= 0 or a weight is negative.
void validate(const VddlConfig & cfg);

/**
 * @brief Every intermediate of the vector direction difference loss.
 *
 * segment_cos[s] compares predicted and GT segment s. gt_turn_cos[j] and
 * point_weights[j] belong to point j of the GT. grad[j] is the derivative of
 * total with respect to predicted point j.
 */
struct LossBreakdown
{
  std::vector<double> segment_cos;
  std::vector<double> gt_turn_cos;
  std::vector<double> point_weights;
  double total = 0.0;
  std::vector<Point2> grad;
};

/// <pred_s, gt_s> / max(|pred_s| |gt_s|, eps) for every segment.
std::vector<double> segment_cosines(
  const MapInstance & pred, const MapInstance & gt, const VddlConfig & cfg = {});

/**
 * @brief Turn cosine at each GT point between its incoming and outgoing segments.
 *
 * Open endpoints have no turn and report 1. Closed instances wrap around, so
 * every point has both neighbours.
 */
std::vector<double> gt_turn_cosines(const MapInstance & gt, const VddlConfig & cfg = {});

/// exp((1 - turn_cos) / 2) per point; open endpoints are exactly 1.
std::vector<double> point_weights(const MapInstance & gt, const VddlConfig & cfg = {});

/**
 * @brief Direction loss of pred against an already canonicalized gt.
 *
 * total = sum over segments s of (1 - segment_cos[s]) * (W[a] + W[b]) where a
 * and b are the two end points of segment s (indices wrap for closed shapes).
 * Every point therefore collects the penalty of each segment it touches.
 */
LossBreakdown vddl_loss(
  const MapInstance & pred, const MapInstance & gt, const VddlConfig & cfg = {});

/// d(total)/d(pred point) with GT and weights held constant.
std::vector<Point2> vddl_grad(
  const MapInstance & pred, const MapInstance & gt, const VddlConfig & cfg = {});

struct CombinedLoss
{
  double l1 = 0.0;    // mean over points of |dx| + |dy|
  double vddl = 0.0;  // LossBreakdown::total
  double total = 0.0;  // lambda_l1 * l1 + lambda_vddl * vddl
  std::vector<Point2> grad;
};

/// Weighted point L1 plus VDDL. The L1 subgradient at zero residual is 0.
CombinedLoss combined_loss(
  const MapInstance & pred, const MapInstance & gt, const VddlConfig & cfg = {});

}  // namespace vecmap

#endif  // VECMAP__VDDL_HPP_
