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

#include "vecmap/matching.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace vecmap
{
namespace
{

double confidence_of(const MapInstance & inst) { return inst.confidence.value_or(0.0); }

std::vector<std::size_t> indices_of_class(const Scene & scene, MapClass label)
{
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < scene.instances.size(); ++i) {
    if (scene.instances[i].label == label) {
      idx.push_back(i);
    }
  }
  return idx;
}

std::vector<std::size_t> ranked_predictions(const Scene & preds, MapClass label)
{
  auto idx = indices_of_class(preds, label);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return confidence_of(preds.instances[a]) > confidence_of(preds.instances[b]);
  });
  return idx;
}

struct PooledDetection
{
  double confidence;
  std::size_t frame;
  std::size_t pred_index;
  bool true_positive;
};

std::vector<PooledDetection> pooled_detections(
  const std::vector<Scene> & preds, const std::vector<Scene> & gts, MapClass label, double tau,
  std::size_t & n_gt)
{
  n_gt = 0;
  std::vector<PooledDetection> pooled;
  for (std::size_t f = 0; f < gts.size(); ++f) {
    const MatchResult m = match_at_threshold(preds[f], gts[f], label, tau);
    n_gt += m.pairs.size() + m.unmatched_gts.size();
    std::set<std::size_t> tp;
    for (const auto & p : m.pairs) tp.insert(p.pred_index);
    for (std::size_t i : indices_of_class(preds[f], label)) {
      pooled.push_back({confidence_of(preds[f].instances[i]), f, i, tp.count(i) > 0});
    }
  }
  std::sort(pooled.begin(), pooled.end(), [](const PooledDetection & a, const PooledDetection & b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.frame != b.frame) return a.frame < b.frame;
    return a.pred_index < b.pred_index;
  });
  return pooled;
}

}  // namespace

namespace
{

// Frames must already be aligned.
std::vector<MatchRecord> acd_matches(const std::vector<Scene> & preds, const std::vector<Scene> & gts)
{
  std::vector<MatchRecord> records;
  for (std::size_t f = 0; f < gts.size(); ++f) {
    for (MapClass label : kAllClasses) {
      const MatchResult m = match_at_threshold(preds[f], gts[f], label, kAcdThreshold);
      for (const auto & p : m.pairs) {
        records.push_back({gts[f].frame_id, label, p.pred_index, p.gt_index, p.chamfer});
      }
    }
  }
  return records;
}

std::optional<double> mean_chamfer(const std::vector<MatchRecord> & records)
{
  if (records.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto & r : records) sum += r.chamfer;
  return sum / static_cast<double>(records.size());
}

}  // namespace

MatchResult match_at_threshold(const Scene & preds, const Scene & gts, MapClass label, double tau)
{
  if (!(tau > 0.0)) {
    throw InvalidInput("match_at_threshold: tau must be > 0");
  }
  MatchResult result;
  result.threshold = tau;
  const auto gt_idx = indices_of_class(gts, label);
  std::vector<bool> taken(gt_idx.size(), false);

  for (std::size_t p : ranked_predictions(preds, label)) {
    const auto & pred_pts = preds.instances[p].points;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_slot = gt_idx.size();
    for (std::size_t k = 0; k < gt_idx.size(); ++k) {
      if (taken[k]) continue;
      const double cd = chamfer_distance(pred_pts, gts.instances[gt_idx[k]].points);
      if (cd < best) {
        best = cd;
        best_slot = k;
      }
    }
    if (best_slot < gt_idx.size() && best <= tau) {
      taken[best_slot] = true;
      result.pairs.push_back({p, gt_idx[best_slot], best});
    } else {
      result.unmatched_preds.push_back(p);
    }
  }
  for (std::size_t k = 0; k < gt_idx.size(); ++k) {
    if (!taken[k]) result.unmatched_gts.push_back(gt_idx[k]);
  }
  return result;
}

double interpolated_ap(const std::vector<RankedDetection> & detections, std::size_t n_gt)
{
  if (n_gt == 0 || detections.empty()) {
    return 0.0;
  }
  const std::size_t n = detections.size();
  std::vector<double> precision(n);
  std::vector<double> recall(n);
  std::size_t tp = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (detections[k].true_positive) ++tp;
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    recall[k] = static_cast<double>(tp) / static_cast<double>(n_gt);
  }
  // Envelope: best precision at this rank or any later one.
  for (std::size_t k = n - 1; k > 0; --k) {
    precision[k - 1] = std::max(precision[k - 1], precision[k]);
  }
  double sum = 0.0;
  std::size_t k = 0;
  for (int i = 0; i < kRecallSamples; ++i) {
    const double r = static_cast<double>(i) / 100.0;
    while (k < n && recall[k] < r) ++k;
    sum += k < n ? precision[k] : 0.0;
  }
  return sum / static_cast<double>(kRecallSamples);
}

std::optional<double> average_precision(
  const std::vector<Scene> & preds, const std::vector<Scene> & gts, MapClass label, double tau)
{
  if (preds.size() != gts.size()) {
    throw InvalidInput("average_precision: frame lists differ in length");
  }
  std::size_t n_gt = 0;
  const auto pooled = pooled_detections(preds, gts, label, tau, n_gt);
  if (n_gt == 0) {
    return pooled.empty() ? std::nullopt : std::optional<double>(0.0);
  }
  std::vector<RankedDetection> ranked;
  ranked.reserve(pooled.size());
  for (const auto & d : pooled) ranked.push_back({d.confidence, d.true_positive});
  return interpolated_ap(ranked, n_gt);
}

std::optional<double> average_precision(
  const Scene & preds, const Scene & gts, MapClass label, double tau)
{
  return average_precision(std::vector<Scene>{preds}, std::vector<Scene>{gts}, label, tau);
}

std::vector<Scene> align_frames(const std::vector<Scene> & preds, const std::vector<Scene> & gts)
{
  std::map<std::string, std::size_t> pred_by_id;
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (!pred_by_id.emplace(preds[i].frame_id, i).second) {
      problems.push_back(preds[i].frame_id + " (duplicate prediction)");
    }
  }
  std::set<std::string> gt_ids;
  std::vector<Scene> aligned;
  aligned.reserve(gts.size());
  for (const auto & gt : gts) {
    if (!gt_ids.insert(gt.frame_id).second) {
      problems.push_back(gt.frame_id + " (duplicate ground truth)");
      continue;
    }
    auto it = pred_by_id.find(gt.frame_id);
    if (it == pred_by_id.end()) {
      problems.push_back(gt.frame_id + " (no prediction)");
    } else {
      aligned.push_back(preds[it->second]);
    }
  }
  for (const auto & [id, i] : pred_by_id) {
    if (!gt_ids.count(id)) problems.push_back(id + " (no ground truth)");
  }
  if (!problems.empty()) {
    std::string msg = "frame_id mismatch:";
    for (const auto & p : problems) msg += " " + p + ";";
    throw InvalidInput(msg);
  }
  return aligned;
}

EvalReport evaluate(const std::vector<Scene> & preds_in, const std::vector<Scene> & gts)
{
  const std::vector<Scene> preds = align_frames(preds_in, gts);
  EvalReport report;
  double ap_sum = 0.0;
  int ap_count = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    const MapClass label = kAllClasses[c];
    ClassReport & cls = report.classes[c];
    cls.label = label;
    for (std::size_t f = 0; f < gts.size(); ++f) {
      cls.n_pred += indices_of_class(preds[f], label).size();
      cls.n_gt += indices_of_class(gts[f], label).size();
    }
    if (cls.n_gt == 0) {
      continue;
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < kChamferThresholds.size(); ++t) {
      cls.ap_at[t] = average_precision(preds, gts, label, kChamferThresholds[t]);
      sum += *cls.ap_at[t];
    }
    cls.ap = sum / static_cast<double>(kChamferThresholds.size());
    ap_sum += *cls.ap;
    ++ap_count;
  }
  report.map = ap_count > 0 ? ap_sum / ap_count : 0.0;

  report.matches = acd_matches(preds, gts);
  report.acd = mean_chamfer(report.matches);
  return report;
}

std::optional<double> acd(const std::vector<Scene> & preds, const std::vector<Scene> & gts)
{
  return mean_chamfer(acd_matches(align_frames(preds, gts), gts));
}

}  // namespace vecmap
