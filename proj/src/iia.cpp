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

#include "vecmap/iia.hpp"

#include <algorithm>
#include <string>

namespace vecmap
{

void validate(const IiaConfig & cfg)
{
  if (cfg.n_instances == 0 || cfg.n_points == 0 || cfg.channels == 0 || cfg.mlp_hidden == 0) {
    throw ShapeError("iia: all sizes must be positive");
  }
  if (cfg.num_heads == 0 || cfg.channels % cfg.num_heads != 0) {
    throw ShapeError(
      "iia: channels " + std::to_string(cfg.channels) + " not divisible by " +
      std::to_string(cfg.num_heads) + " heads");
  }
}

void HierEmbedding::check() const
{
  require_matrix(tensor, "hierarchical embedding");
  if (tensor.dim(0) != n_instances * n_points) {
    throw ShapeError(
      "hierarchical embedding has shape " + shape_string(tensor.shape()) + ", expected " +
      std::to_string(n_instances * n_points) + " rows");
  }
}

IiaParams IiaParams::random(const IiaConfig & cfg, std::uint64_t seed)
{
  validate(cfg);
  SeededRng rng(seed);
  IiaParams p;
  p.merge_mlp.push_back(LinearParams::random(cfg.n_points * cfg.channels, cfg.mlp_hidden, rng));
  p.merge_mlp.push_back(LinearParams::random(cfg.mlp_hidden, cfg.channels, rng));
  p.instance_attn = MhsaParams::random(cfg.channels, cfg.num_heads, rng);
  p.point_attn = MhsaParams::random(cfg.channels, cfg.num_heads, rng);
  return p;
}

HierEmbedding compose_queries(const TensorF & q_ins, const TensorF & q_pos)
{
  require_matrix(q_ins, "instance queries");
  require_matrix(q_pos, "point queries");
  if (q_ins.dim(1) != q_pos.dim(1)) {
    throw ShapeError(
      "compose_queries: instance queries " + shape_string(q_ins.shape()) +
      " and point queries " + shape_string(q_pos.shape()) + " differ in channels");
  }
  const std::size_t ni = q_ins.dim(0);
  const std::size_t np = q_pos.dim(0);
  const std::size_t c = q_ins.dim(1);
  HierEmbedding h{TensorF({ni * np, c}), ni, np};
  for (std::size_t i = 0; i < ni; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      for (std::size_t k = 0; k < c; ++k) {
        h.tensor(i * np + j, k) = q_ins(i, k) + q_pos(j, k);
      }
    }
  }
  return h;
}

TensorF instance_self_attention(const HierEmbedding & h, const IiaParams & p)
{
  h.check();
  // Row-major (N_i * N_p, C) is already (N_i, N_p * C) with points in order.
  const TensorF merged = h.tensor.reshaped({h.n_instances, h.n_points * h.channels()});
  const TensorF instance_features = mlp_forward(merged, p.merge_mlp);
  return mhsa_forward(instance_features, p.instance_attn);
}

HierEmbedding point_self_attention(
  const HierEmbedding & h, const TensorF & f_ins, const IiaParams & p)
{
  h.check();
  require_matrix(f_ins, "instance embedding");
  const std::size_t c = h.channels();
  if (f_ins.dim(0) != h.n_instances || f_ins.dim(1) != c) {
    throw ShapeError(
      "point_self_attention: instance embedding " + shape_string(f_ins.shape()) + ", expected " +
      shape_string({h.n_instances, c}));
  }
  HierEmbedding out{TensorF(h.tensor.shape()), h.n_instances, h.n_points};
  for (std::size_t i = 0; i < h.n_instances; ++i) {
    TensorF block({h.n_points, c});
    for (std::size_t j = 0; j < h.n_points; ++j) {
      for (std::size_t k = 0; k < c; ++k) {
        block(j, k) = h.tensor(i * h.n_points + j, k) + f_ins(i, k);
      }
    }
    const TensorF attended = mhsa_forward(block, p.point_attn);
    std::copy(
      attended.data().begin(), attended.data().end(),
      out.tensor.data().begin() + static_cast<std::ptrdiff_t>(i * h.n_points * c));
  }
  return out;
}

HierEmbedding iia_forward(const HierEmbedding & h, const IiaParams & p)
{
  return point_self_attention(h, instance_self_attention(h, p), p);
}

HierEmbedding permute_instances(const HierEmbedding & h, const std::vector<std::size_t> & order)
{
  h.check();
  if (order.size() != h.n_instances) {
    throw ShapeError("permute_instances: order length differs from instance count");
  }
  HierEmbedding out{TensorF(h.tensor.shape()), h.n_instances, h.n_points};
  const std::size_t block = h.n_points * h.channels();
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] >= h.n_instances) {
      throw ShapeError("permute_instances: index out of range");
    }
    const auto src = h.tensor.data().subspan(order[k] * block, block);
    std::copy(src.begin(), src.end(), out.tensor.data().begin() + static_cast<std::ptrdiff_t>(k * block));
  }
  return out;
}

}  // namespace vecmap
