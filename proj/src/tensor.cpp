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

#include "vecmap/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <numeric>

namespace vecmap
{
namespace
{

std::size_t element_count(const Shape & shape)
{
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

std::string shape_string(const Shape & shape)
{
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(shape[i]);
  }
  return s + ")";
}

TensorF::TensorF(Shape shape) : shape_(std::move(shape)), data_(element_count(shape_), 0.0) {}

TensorF::TensorF(Shape shape, std::vector<double> data)
: shape_(std::move(shape)), data_(std::move(data))
{
  if (data_.size() != element_count(shape_)) {
    throw ShapeError(
      "tensor data length " + std::to_string(data_.size()) + " does not match shape " +
      shape_string(shape_));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("tensor data contains a non-finite value");
    }
  }
}

std::span<const double> TensorF::row(std::size_t i) const
{
  const std::size_t width = data_.size() / shape_[0];
  return std::span<const double>(data_).subspan(i * width, width);
}

std::span<double> TensorF::row(std::size_t i)
{
  const std::size_t width = data_.size() / shape_[0];
  return std::span<double>(data_).subspan(i * width, width);
}

TensorF TensorF::reshaped(Shape shape) const
{
  if (element_count(shape) != data_.size()) {
    throw ShapeError("cannot reshape " + shape_string(shape_) + " to " + shape_string(shape));
  }
  TensorF out;
  out.shape_ = std::move(shape);
  out.data_ = data_;
  return out;
}

void require_matrix(const TensorF & t, const char * what)
{
  if (t.rank() != 2) {
    throw ShapeError(std::string(what) + ": expected a matrix, got shape " + shape_string(t.shape()));
  }
}

double max_abs_diff(const TensorF & a, const TensorF & b)
{
  if (a.shape() != b.shape()) {
    throw ShapeError(
      "max_abs_diff: shapes " + shape_string(a.shape()) + " and " + shape_string(b.shape()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

std::uint64_t content_hash(const TensorF & t)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (std::size_t d : t.shape()) mix(static_cast<std::uint64_t>(d));
  for (double v : t.data()) mix(std::bit_cast<std::uint64_t>(v));
  return h;
}

std::uint64_t SeededRng::next_u64()
{
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SeededRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double SeededRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double SeededRng::normal()
{
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t SeededRng::below(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

TensorF random_uniform(Shape shape, double lo, double hi, SeededRng & rng)
{
  TensorF t(std::move(shape));
  for (double & v : t.data()) v = rng.uniform(lo, hi);
  return t;
}

LinearParams LinearParams::random(std::size_t in, std::size_t out, SeededRng & rng)
{
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  LinearParams p;
  p.weight = random_uniform({out, in}, -bound, bound, rng);
  p.bias = random_uniform({out}, -bound, bound, rng);
  return p;
}

LinearParams LinearParams::identity(std::size_t n)
{
  LinearParams p;
  p.weight = TensorF({n, n});
  for (std::size_t i = 0; i < n; ++i) p.weight(i, i) = 1.0;
  p.bias = TensorF({n});
  return p;
}

TensorF linear_forward(const TensorF & x, const LinearParams & p)
{
  require_matrix(x, "linear_forward input");
  require_matrix(p.weight, "linear_forward weight");
  if (x.dim(1) != p.in_features() || p.bias.rank() != 1 || p.bias.dim(0) != p.out_features()) {
    throw ShapeError(
      "linear_forward: input " + shape_string(x.shape()) + " vs weight " +
      shape_string(p.weight.shape()) + ", bias " + shape_string(p.bias.shape()));
  }
  const std::size_t n = x.dim(0);
  const std::size_t in = p.in_features();
  const std::size_t out = p.out_features();
  TensorF y({n, out});
  for (std::size_t r = 0; r < n; ++r) {
    const auto xr = x.row(r);
    for (std::size_t o = 0; o < out; ++o) {
      const auto wr = p.weight.row(o);
      double acc = 0.0;
      for (std::size_t i = 0; i < in; ++i) acc += xr[i] * wr[i];
      y(r, o) = acc + p.bias.data()[o];
    }
  }
  return y;
}

TensorF softmax_rows(const TensorF & x)
{
  require_matrix(x, "softmax_rows");
  if (x.dim(1) == 0) throw ShapeError("softmax_rows: rows must be non-empty");
  TensorF y = x;
  for (std::size_t r = 0; r < y.dim(0); ++r) {
    auto row = y.row(r);
    const double top = *std::max_element(row.begin(), row.end());
    double sum = 0.0;
    for (double & v : row) {
      v = std::exp(v - top);
      sum += v;
    }
    for (double & v : row) v /= sum;
  }
  return y;
}

TensorF mlp_forward(const TensorF & x, std::span<const LinearParams> layers)
{
  if (layers.empty()) throw ShapeError("mlp_forward: no layers");
  TensorF h = x;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    h = linear_forward(h, layers[l]);
    if (l + 1 < layers.size()) {
      for (double & v : h.data()) v = std::max(v, 0.0);
    }
  }
  return h;
}

MhsaParams MhsaParams::random(std::size_t model_dim, std::size_t num_heads, SeededRng & rng)
{
  if (num_heads == 0 || model_dim % num_heads != 0) {
    throw ShapeError(
      "mhsa: model_dim " + std::to_string(model_dim) + " not divisible by " +
      std::to_string(num_heads) + " heads");
  }
  MhsaParams p;
  p.num_heads = num_heads;
  p.model_dim = model_dim;
  const std::size_t d = model_dim / num_heads;
  for (std::size_t h = 0; h < num_heads; ++h) {
    p.query.push_back(LinearParams::random(model_dim, d, rng));
    p.key.push_back(LinearParams::random(model_dim, d, rng));
    p.value.push_back(LinearParams::random(model_dim, d, rng));
  }
  p.output = LinearParams::random(model_dim, model_dim, rng);
  return p;
}

MhsaParams MhsaParams::identity(std::size_t model_dim)
{
  MhsaParams p;
  p.num_heads = 1;
  p.model_dim = model_dim;
  p.query.push_back(LinearParams::identity(model_dim));
  p.key.push_back(LinearParams::identity(model_dim));
  p.value.push_back(LinearParams::identity(model_dim));
  p.output = LinearParams::identity(model_dim);
  return p;
}

void validate(const MhsaParams & p)
{
  if (p.num_heads == 0 || p.model_dim % p.num_heads != 0) {
    throw ShapeError("mhsa: model_dim must be divisible by num_heads");
  }
  const std::size_t d = p.head_dim();
  auto check = [&](const LinearParams & lp, std::size_t out, std::size_t in, const char * what) {
    if (lp.weight.shape() != Shape{out, in} || lp.bias.shape() != Shape{out}) {
      throw ShapeError(
        std::string("mhsa ") + what + ": weight " + shape_string(lp.weight.shape()) +
        ", expected " + shape_string({out, in}));
    }
  };
  if (p.query.size() != p.num_heads || p.key.size() != p.num_heads ||
      p.value.size() != p.num_heads) {
    throw ShapeError("mhsa: one query/key/value projection per head required");
  }
  for (std::size_t h = 0; h < p.num_heads; ++h) {
    check(p.query[h], d, p.model_dim, "query");
    check(p.key[h], d, p.model_dim, "key");
    check(p.value[h], d, p.model_dim, "value");
  }
  check(p.output, p.model_dim, p.model_dim, "output");
}

TensorF mhsa_forward(const TensorF & x, const MhsaParams & p)
{
  validate(p);
  require_matrix(x, "mhsa_forward input");
  if (x.dim(1) != p.model_dim) {
    throw ShapeError(
      "mhsa_forward: input " + shape_string(x.shape()) + " vs model_dim " +
      std::to_string(p.model_dim));
  }
  const std::size_t n = x.dim(0);
  const std::size_t d = p.head_dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  TensorF concat({n, p.model_dim});
  for (std::size_t h = 0; h < p.num_heads; ++h) {
    const TensorF q = linear_forward(x, p.query[h]);
    const TensorF k = linear_forward(x, p.key[h]);
    const TensorF v = linear_forward(x, p.value[h]);
    TensorF scores({n, n});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t c = 0; c < d; ++c) acc += q(i, c) * k(j, c);
        scores(i, j) = acc * scale;
      }
    }
    const TensorF attn = softmax_rows(scores);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < d; ++c) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += attn(i, j) * v(j, c);
        concat(i, h * d + c) = acc;
      }
    }
  }
  return linear_forward(concat, p.output);
}

}  // namespace vecmap
