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

#ifndef VECMAP__IIA_HPP_
#define VECMAP__IIA_HPP_

#include "vecmap/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vecmap
{

struct IiaConfig
{
  std::size_t n_instances = 8;
  std::size_t n_points = 20;
  std::size_t channels = 32;
  std::size_t num_heads = 4;
  std::size_t mlp_hidden = 64;
};

/// Throws ShapeError for zero sizes or channels not divisible by heads.
void validate(const IiaConfig & cfg);

/**
 * @brief Instance-point query features.
 *
 * tensor is (n_instances * n_points, C). Row i * n_points + j holds point j
 * of instance i.
 */
struct HierEmbedding
{
  TensorF tensor;
  std::size_t n_instances = 0;
  std::size_t n_points = 0;

  std::size_t channels() const { return tensor.dim(1); }
  /// Throws ShapeError if tensor is not (n_instances * n_points, C).
  void check() const;
};

struct IiaParams
{
  std::vector<LinearParams> merge_mlp;  // (N_p * C) -> mlp_hidden -> C
  MhsaParams instance_attn;
  MhsaParams point_attn;

  static IiaParams random(const IiaConfig & cfg, std::uint64_t seed);
};

/// Row (i, j) = q_ins[i] + q_pos[j]; the point queries are shared by every instance.
HierEmbedding compose_queries(const TensorF & q_ins, const TensorF & q_pos);

/// Concatenate each instance's points along channels, compress with the MLP,
/// then attend across instances. Returns (N_i, C).
TensorF instance_self_attention(const HierEmbedding & h, const IiaParams & p);

/// Broadcast-add f_ins to every point of its instance, then attend among the
/// points of each instance separately.
HierEmbedding point_self_attention(
  const HierEmbedding & h, const TensorF & f_ins, const IiaParams & p);

HierEmbedding iia_forward(const HierEmbedding & h, const IiaParams & p);

/// Reorders whole instance blocks: output block k is input block order[k].
HierEmbedding permute_instances(const HierEmbedding & h, const std::vector<std::size_t> & order);

}  // namespace vecmap

#endif  // VECMAP__IIA_HPP_
