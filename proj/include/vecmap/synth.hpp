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

#ifndef VECMAP__SYNTH_HPP_
#define VECMAP__SYNTH_HPP_

#include "vecmap/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vecmap
{

struct SceneConfig
{
  std::uint64_t seed = 0;
  std::size_t n_dividers = 4;
  std::size_t n_boundaries = 2;
  std::size_t n_crossings = 2;
  std::size_t points_per_instance = kDefaultPointsPerInstance;
  Extent extent;
  std::string frame_id = "frame_0000";
};

/// Throws InvalidInput for a degenerate extent or fewer than 2 points per instance.
void validate(const SceneConfig & cfg);

enum class JitterMode { gaussian, alternating_perpendicular };

struct JitterConfig
{
  double sigma = 0.0;  // meters
  JitterMode mode = JitterMode::gaussian;
  std::uint64_t seed = 0;
  double drop_rate = 0.0;      // per-instance deletion probability
  double spurious_rate = 0.0;  // expected number of extra false instances
};

void validate(const JitterConfig & cfg);

/**
 * @brief Deterministic synthetic GT scene.
 *
 * Dividers (quadratic) and boundaries (cubic) are open curves, monotone in y,
 * each confined to its own x lane so neighbours stay apart. Crossings are
 * closed rectangles, one per y band. Instances are emitted dividers first,
 * then boundaries, then crossings.
 */
Scene generate_scene(const SceneConfig & cfg);

/**
 * @brief Turns a GT scene into a jittered prediction scene.
 *
 * Survivors keep label and topology and get confidence
 * clamp(exp(-sigma), 0.05, 1). Random draws per instance happen in a fixed
 * order regardless of sigma, so sweeps over sigma share their noise.
 */
Scene perturb(const Scene & scene, const JitterConfig & cfg);

struct SweepRow
{
  double sigma = 0.0;
  double mean_vddl = 0.0;  // per-instance VDDL averaged over instances then trials
  double mean_map = 0.0;
  std::optional<double> mean_acd;  // over trials that produced an ACD
  std::size_t trials = 0;
};

/// Gaussian jitter sweep; trial t uses scene seed cfg.seed + t.
std::vector<SweepRow> jitter_sweep(
  const SceneConfig & cfg, const std::vector<double> & sigmas, std::size_t trials);

}  // namespace vecmap

#endif  // VECMAP__SYNTH_HPP_
