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

#ifndef VECMAP__MPN_HPP_
#define VECMAP__MPN_HPP_

#include "vecmap/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace vecmap
{

/// BEV feature map stored as an (H, W, C) tensor.
struct FeatureMap
{
  TensorF tensor;

  std::size_t height() const { return tensor.dim(0); }
  std::size_t width() const { return tensor.dim(1); }
  std::size_t channels() const { return tensor.dim(2); }
};

enum class MpnMode { train, infer };

struct MpnConfig
{
  std::size_t num_down_layers = 2;
  std::size_t in_channels = 16;
  std::vector<std::size_t> level_channels = {32, 32, 32};
  MpnMode mode = MpnMode::train;

  /// Width of the fused output; every level is projected to it.
  std::size_t fused_channels() const { return level_channels.at(0); }
};

/// Throws ShapeError unless 1 <= num_down_layers <= 3 and enough level widths are given.
void validate(const MpnConfig & cfg);

struct MpnParams
{
  std::vector<LinearParams> down;     // one per downsampling step
  std::vector<LinearParams> lateral;  // one per level incl. the input level, to fused width

  static MpnParams random(const MpnConfig & cfg, std::uint64_t seed);
};

struct MpnOutput
{
  FeatureMap fused;
  std::optional<std::vector<FeatureMap>> levels;  // train mode only
};

/// Applies p independently at every pixel.
FeatureMap project_channels(const FeatureMap & f, const LinearParams & p);

/// 2x2 mean pooling (last row/column replicated when odd), then channel projection.
FeatureMap downsample2x(const FeatureMap & f, const LinearParams & proj);

/// Bilinear resize with corner alignment. Target must not be smaller than the source.
FeatureMap upsample2x(const FeatureMap & f, std::size_t target_h, std::size_t target_w);

/**
 * @brief Multi-scale neck forward pass.
 *
 * Builds the pyramid by repeated downsample2x, upsamples every level back to
 * the input resolution, projects each to the fused width and sums them,
 * level 0 first. Train mode also returns the per-level full-resolution maps
 * that went into the sum; infer mode returns only the fused map, computed by
 * the same arithmetic.
 */
MpnOutput mpn_forward(const FeatureMap & f, const MpnConfig & cfg, const MpnParams & params);

}  // namespace vecmap

#endif  // VECMAP__MPN_HPP_
