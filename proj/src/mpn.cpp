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

#include "vecmap/mpn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vecmap
{
namespace
{

void check_map(const FeatureMap & f, const char * what)
{
  if (f.tensor.rank() != 3) {
    throw ShapeError(
      std::string(what) + ": expected an (H, W, C) map, got " + shape_string(f.tensor.shape()));
  }
}

double lerp(double a, double b, double t) { return a + t * (b - a); }

}  // namespace

void validate(const MpnConfig & cfg)
{
  if (cfg.num_down_layers < 1 || cfg.num_down_layers > 3) {
    throw ShapeError("mpn: num_down_layers must be in [1, 3]");
  }
  if (cfg.level_channels.size() < cfg.num_down_layers) {
    throw ShapeError("mpn: need a channel width for every downsampled level");
  }
  if (cfg.in_channels == 0 ||
      std::any_of(cfg.level_channels.begin(), cfg.level_channels.end(), [](auto c) { return c == 0; })) {
    throw ShapeError("mpn: channel widths must be positive");
  }
}

MpnParams MpnParams::random(const MpnConfig & cfg, std::uint64_t seed)
{
  validate(cfg);
  SeededRng rng(seed);
  MpnParams p;
  std::size_t prev = cfg.in_channels;
  for (std::size_t l = 0; l < cfg.num_down_layers; ++l) {
    p.down.push_back(LinearParams::random(prev, cfg.level_channels[l], rng));
    prev = cfg.level_channels[l];
  }
  p.lateral.push_back(LinearParams::random(cfg.in_channels, cfg.fused_channels(), rng));
  for (std::size_t l = 0; l < cfg.num_down_layers; ++l) {
    p.lateral.push_back(LinearParams::random(cfg.level_channels[l], cfg.fused_channels(), rng));
  }
  return p;
}

FeatureMap project_channels(const FeatureMap & f, const LinearParams & p)
{
  check_map(f, "project_channels");
  const std::size_t h = f.height();
  const std::size_t w = f.width();
  const TensorF flat = f.tensor.reshaped({h * w, f.channels()});
  const TensorF projected = linear_forward(flat, p);
  return {projected.reshaped({h, w, p.out_features()})};
}

FeatureMap downsample2x(const FeatureMap & f, const LinearParams & proj)
{
  check_map(f, "downsample2x");
  const std::size_t h = f.height();
  const std::size_t w = f.width();
  const std::size_t c = f.channels();
  if (h == 0 || w == 0) throw ShapeError("downsample2x: empty map " + shape_string(f.tensor.shape()));
  const std::size_t oh = (h + 1) / 2;
  const std::size_t ow = (w + 1) / 2;
  TensorF pooled({oh, ow, c});
  for (std::size_t i = 0; i < oh; ++i) {
    const std::size_t r0 = 2 * i;
    const std::size_t r1 = std::min(2 * i + 1, h - 1);
    for (std::size_t j = 0; j < ow; ++j) {
      const std::size_t c0 = 2 * j;
      const std::size_t c1 = std::min(2 * j + 1, w - 1);
      for (std::size_t k = 0; k < c; ++k) {
        const double sum =
          f.tensor(r0, c0, k) + f.tensor(r0, c1, k) + f.tensor(r1, c0, k) + f.tensor(r1, c1, k);
        pooled(i, j, k) = 0.25 * sum;
      }
    }
  }
  return project_channels({std::move(pooled)}, proj);
}

FeatureMap upsample2x(const FeatureMap & f, std::size_t target_h, std::size_t target_w)
{
  check_map(f, "upsample2x");
  const std::size_t h = f.height();
  const std::size_t w = f.width();
  const std::size_t c = f.channels();
  if (target_h < h || target_w < w) {
    throw std::invalid_argument(
      "upsample2x: target " + std::to_string(target_h) + "x" + std::to_string(target_w) +
      " smaller than source " + std::to_string(h) + "x" + std::to_string(w));
  }
  auto source_coord = [](std::size_t i, std::size_t src, std::size_t dst) {
    if (dst <= 1 || src <= 1) return 0.0;
    return static_cast<double>(i * (src - 1)) / static_cast<double>(dst - 1);
  };
  TensorF out({target_h, target_w, c});
  for (std::size_t i = 0; i < target_h; ++i) {
    const double sy = source_coord(i, h, target_h);
    const std::size_t y0 = static_cast<std::size_t>(std::floor(sy));
    const std::size_t y1 = std::min(y0 + 1, h - 1);
    const double fy = sy - static_cast<double>(y0);
    for (std::size_t j = 0; j < target_w; ++j) {
      const double sx = source_coord(j, w, target_w);
      const std::size_t x0 = static_cast<std::size_t>(std::floor(sx));
      const std::size_t x1 = std::min(x0 + 1, w - 1);
      const double fx = sx - static_cast<double>(x0);
      for (std::size_t k = 0; k < c; ++k) {
        const double top = lerp(f.tensor(y0, x0, k), f.tensor(y0, x1, k), fx);
        const double bottom = lerp(f.tensor(y1, x0, k), f.tensor(y1, x1, k), fx);
        out(i, j, k) = lerp(top, bottom, fy);
      }
    }
  }
  return {std::move(out)};
}

MpnOutput mpn_forward(const FeatureMap & f, const MpnConfig & cfg, const MpnParams & params)
{
  validate(cfg);
  check_map(f, "mpn_forward");
  if (f.height() < 4 || f.width() < 4) {
    throw ShapeError("mpn_forward: input map must be at least 4x4");
  }
  if (f.channels() != cfg.in_channels) {
    throw ShapeError(
      "mpn_forward: input has " + std::to_string(f.channels()) + " channels, config expects " +
      std::to_string(cfg.in_channels));
  }
  if (params.down.size() != cfg.num_down_layers || params.lateral.size() != cfg.num_down_layers + 1) {
    throw ShapeError("mpn_forward: parameter count does not match num_down_layers");
  }
  const std::size_t h = f.height();
  const std::size_t w = f.width();

  std::vector<FeatureMap> pyramid{f};
  for (std::size_t l = 0; l < cfg.num_down_layers; ++l) {
    pyramid.push_back(downsample2x(pyramid.back(), params.down[l]));
  }

  std::vector<FeatureMap> full_res;
  full_res.reserve(pyramid.size());
  for (std::size_t l = 0; l < pyramid.size(); ++l) {
    const FeatureMap restored = l == 0 ? pyramid[0] : upsample2x(pyramid[l], h, w);
    full_res.push_back(project_channels(restored, params.lateral[l]));
  }

  MpnOutput out;
  out.fused = full_res[0];
  auto fused = out.fused.tensor.data();
  for (std::size_t l = 1; l < full_res.size(); ++l) {
    const auto level = full_res[l].tensor.data();
    for (std::size_t i = 0; i < fused.size(); ++i) fused[i] += level[i];
  }
  if (cfg.mode == MpnMode::train) {
    out.levels = std::move(full_res);
  }
  return out;
}

}  // namespace vecmap
