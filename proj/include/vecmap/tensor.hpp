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

#ifndef VECMAP__TENSOR_HPP_
#define VECMAP__TENSOR_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vecmap
{

class ShapeError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

using Shape = std::vector<std::size_t>;

std::string shape_string(const Shape & shape);

/// Dense row-major float64 array. Entries are always finite.
class TensorF
{
public:
  TensorF() = default;
  /// Zero-filled tensor.
  explicit TensorF(Shape shape);
  /// Throws ShapeError on a size mismatch, std::invalid_argument on non-finite data.
  TensorF(Shape shape, std::vector<double> data);

  const Shape & shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const { return data_.size(); }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  double & operator()(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }
  double & operator()(std::size_t i, std::size_t j, std::size_t k)
  {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const
  {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }

  std::span<const double> row(std::size_t i) const;
  std::span<double> row(std::size_t i);

  /// Same data, new shape with equal element count.
  TensorF reshaped(Shape shape) const;

  friend bool operator==(const TensorF &, const TensorF &) = default;

private:
  Shape shape_;
  std::vector<double> data_;
};

/// Throws ShapeError naming `what` when t is not rank-2.
void require_matrix(const TensorF & t, const char * what);

/// Largest absolute element-wise difference. Throws ShapeError on shape mismatch.
double max_abs_diff(const TensorF & a, const TensorF & b);

/// FNV-1a over the little-endian bytes of every element, shape included.
std::uint64_t content_hash(const TensorF & t);

/**
 * @brief SplitMix64 generator.
 *
 * state += 0x9E3779B97F4A7C15; z = state;
 * z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
 * z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
 * return z ^ (z >> 31);
 *
 * Doubles take the top 53 bits. Normals use Box-Muller without caching, so
 * the stream is identical on every platform.
 */
class SeededRng
{
public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  double normal();
  /// Uniform integer in [0, n). n must be > 0.
  std::size_t below(std::size_t n);

private:
  std::uint64_t state_;
};

TensorF random_uniform(Shape shape, double lo, double hi, SeededRng & rng);

struct LinearParams
{
  TensorF weight;  // (out, in)
  TensorF bias;    // (out)

  std::size_t in_features() const { return weight.dim(1); }
  std::size_t out_features() const { return weight.dim(0); }

  /// uniform(-1/sqrt(in), 1/sqrt(in)) for weight then bias.
  static LinearParams random(std::size_t in, std::size_t out, SeededRng & rng);
  static LinearParams identity(std::size_t n);
};

/// y = x W^T + b per row. x is (n, in).
TensorF linear_forward(const TensorF & x, const LinearParams & p);

/// Row-wise softmax after subtracting each row's max.
TensorF softmax_rows(const TensorF & x);

/// Linear layers with ReLU between them and none after the last.
TensorF mlp_forward(const TensorF & x, std::span<const LinearParams> layers);

struct MhsaParams
{
  std::size_t num_heads = 1;
  std::size_t model_dim = 0;
  std::vector<LinearParams> query;  // per head, (d_head, model_dim)
  std::vector<LinearParams> key;
  std::vector<LinearParams> value;
  LinearParams output;  // (model_dim, model_dim)

  std::size_t head_dim() const { return model_dim / num_heads; }

  static MhsaParams random(std::size_t model_dim, std::size_t num_heads, SeededRng & rng);
  /// Single head, identity projections, zero biases.
  static MhsaParams identity(std::size_t model_dim);
};

/// Throws ShapeError if the parameter shapes are inconsistent.
void validate(const MhsaParams & p);

/**
 * @brief Multi-head scaled dot-product self-attention, no positional terms.
 *
 * Per head: softmax(Q K^T / sqrt(d_head)) V. Heads are concatenated in head
 * order and passed through the output projection. x is (n_tokens, model_dim).
 */
TensorF mhsa_forward(const TensorF & x, const MhsaParams & p);

}  // namespace vecmap

#endif  // VECMAP__TENSOR_HPP_
