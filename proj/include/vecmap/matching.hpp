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

#ifndef VECMAP__MATCHING_HPP_
#define VECMAP__MATCHING_HPP_

#include "vecmap/geometry.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace vecmap
{

/// Chamfer match thresholds in meters used by the AP protocol.
inline constexpr std::array<double, 3> kChamferThresholds = {0.5, 1.0, 1.5};
/// Threshold under which matched pairs count toward the average chamfer distance.
inline constexpr double kAcdThreshold = 1.5;
/// Recall sample count for interpolated AP (0.00, 0.01, ..., 1.00).
inline constexpr int kRecallSamples = 101;

struct MatchPair
{
  std::size_t pred_index = 0;  // index into Scene::instances
  std::size_t gt_index = 0;
  double chamfer = 0.0;
};

struct MatchResult
{
  std::vector<MatchPair> pairs;  // in matching order (descending confidence)
  std::vector<std::size_t> unmatched_preds;
  std::vector<std::size_t> unmatched_gts;
  double threshold = 0.0;
};

/**
 * @brief Greedy confidence-ordered matching of one class within one frame.
 *
 * Predictions of `label` are visited by descending confidence (ties by index).
 * Each takes the still-unmatched GT of the same class with the smallest
 * chamfer distance (ties by GT index) if that distance is <= tau.
 * Missing confidences rank as 0.
 */
MatchResult match_at_threshold(
  const Scene & preds, const Scene & gts, MapClass label, double tau);

/// One ranked detection with its TP/FP outcome.
struct RankedDetection
{
  double confidence = 0.0;
  bool true_positive = false;
};

/**
 * @brief 101-point interpolated AP over ranked detections.
 *
 * `detections` must already be sorted in ranking order. Returns 0 when
 * n_gt == 0 regardless of detections.
 */
double interpolated_ap(const std::vector<RankedDetection> & detections, std::size_t n_gt);

/**
 * @brief AP of one class pooled over aligned frames.
 *
 * Returns std::nullopt when the class has neither GT nor predictions (the
 * class is skipped), 0 when it has predictions but no GT.
 */
std::optional<double> average_precision(
  const std::vector<Scene> & preds, const std::vector<Scene> & gts, MapClass label, double tau);

/// Single-frame convenience overload.
std::optional<double> average_precision(
  const Scene & preds, const Scene & gts, MapClass label, double tau);

struct MatchRecord
{
  std::string frame_id;
  MapClass label = MapClass::divider;
  std::size_t pred_index = 0;
  std::size_t gt_index = 0;
  double chamfer = 0.0;
};

struct ClassReport
{
  MapClass label = MapClass::divider;
  std::array<std::optional<double>, kChamferThresholds.size()> ap_at{};
  std::optional<double> ap;  // mean over thresholds; absent when the class has no GT
  std::size_t n_pred = 0;
  std::size_t n_gt = 0;
};

struct EvalReport
{
  std::array<ClassReport, 3> classes{};  // in kAllClasses order
  double map = 0.0;  // mean of the present per-class APs; 0 when none is present
  std::optional<double> acd;  // absent when no pair matched at kAcdThreshold
  std::vector<MatchRecord> matches;  // pairs at kAcdThreshold, frame order then class order
};

/// Pairs scenes by frame_id. Throws InvalidInput listing ids without a counterpart.
EvalReport evaluate(const std::vector<Scene> & preds, const std::vector<Scene> & gts);

/// Mean chamfer distance of pairs matched at kAcdThreshold across all classes.
std::optional<double> acd(const std::vector<Scene> & preds, const std::vector<Scene> & gts);

/// Reorders preds to follow the frame order of gts. Throws on id mismatch.
std::vector<Scene> align_frames(const std::vector<Scene> & preds, const std::vector<Scene> & gts);

}  // namespace vecmap

#endif  // VECMAP__MATCHING_HPP_
