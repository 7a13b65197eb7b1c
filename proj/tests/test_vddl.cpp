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

#include "vecmap/vddl.hpp"

#include "vecmap/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

namespace vecmap
{
namespace
{

MapInstance make(std::vector<Point2> pts, Topology topo = Topology::open)
{
  MapInstance m;
  m.points = std::move(pts);
  m.topology = topo;
  return m;
}

// Frozen from an independent 30-digit evaluation of the per-segment formula.
constexpr double kZigzagOnLine = 1.17157287525380990240;
constexpr double kZigzagOnCorner = 5.29744254140025629370;

TEST(SegmentCosines, HandCases)
{
  const auto gt = make({{0, 0}, {1, 0}});
  EXPECT_NEAR(segment_cosines(make({{0, 0}, {0, 1}}), gt)[0], 0.0, 1e-15);
  EXPECT_NEAR(segment_cosines(make({{1, 0}, {0, 0}}), gt)[0], -1.0, 1e-15);
  const auto poly = make({{0, 0}, {1, 0}, {3, 2}, {3, 5}});
  for (double c : segment_cosines(poly, poly)) EXPECT_NEAR(c, 1.0, 1e-15);
}

TEST(SegmentCosines, ClosedCountAndMismatch)
{
  const auto tri = make({{0, 0}, {1, 0}, {0, 1}}, Topology::closed);
  EXPECT_EQ(segment_cosines(tri, tri).size(), 3u);
  EXPECT_THROW(segment_cosines(tri, make({{0, 0}, {1, 0}, {0, 1}})), InvalidInput);
  EXPECT_THROW(segment_cosines(make({{0, 0}, {1, 0}}), make({{0, 0}, {1, 0}, {2, 0}})), InvalidInput);
}

TEST(GtTurnCosines, OpenCases)
{
  EXPECT_NEAR(gt_turn_cosines(make({{0, 0}, {1, 0}, {2, 0}}))[1], 1.0, 1e-15);
  const auto right = gt_turn_cosines(make({{0, 0}, {1, 0}, {1, 1}}));
  EXPECT_EQ(right[1], 0.0);
  EXPECT_EQ(right[0], 1.0);
  EXPECT_EQ(right[2], 1.0);
}

TEST(GtTurnCosines, ClosedEquilateralTriangle)
{
  const double h = std::sqrt(3.0) / 2.0;
  const auto tri = make({{0, 0}, {1, 0}, {0.5, h}}, Topology::closed);
  for (double c : gt_turn_cosines(tri)) EXPECT_NEAR(c, -0.5, 1e-15);
}

TEST(PointWeights, HandCases)
{
  EXPECT_NEAR(point_weights(make({{0, 0}, {1, 0}, {2, 0}}))[1], 1.0, 1e-15);
  EXPECT_EQ(point_weights(make({{0, 0}, {1, 0}, {1, 1}}))[1], std::exp(0.5));
  EXPECT_NEAR(point_weights(make({{0, 0}, {1, 0}, {0, 0}}))[1], std::numbers::e, 1e-15);
}

TEST(VddlLoss, IdenticalIsZero)
{
  const auto gt = make({{0, 0}, {1, 0}, {2, 1}, {4, 1}});
  EXPECT_LE(vddl_loss(gt, gt).total, 1e-6);
  const auto sq = make({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, Topology::closed);
  EXPECT_LE(vddl_loss(sq, sq).total, 1e-6);
}

TEST(VddlLoss, ZigzagAgainstStraightLine)
{
  const auto pred = make({{0, 0}, {1, 1}, {2, 0}});
  const auto b = vddl_loss(pred, make({{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_NEAR(b.segment_cos[0], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(b.segment_cos[1], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(b.total, kZigzagOnLine, 1e-12);
  EXPECT_EQ(b.grad.size(), 3u);
}

TEST(VddlLoss, ZigzagAgainstRightAngle)
{
  const auto b = vddl_loss(make({{0, 0}, {1, 1}, {2, 0}}), make({{0, 0}, {1, 0}, {1, 1}}));
  EXPECT_EQ(b.point_weights[1], std::exp(0.5));
  EXPECT_NEAR(b.total, kZigzagOnCorner, 1e-12);
}

TEST(VddlLoss, MatchesPerPointReference)
{
  SeededRng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto topo = trial % 2 ? Topology::closed : Topology::open;
    const auto gt = testing::random_instance(rng, 2 + rng.below(20), topo);
    const auto pred = testing::jittered(gt, 0.5, rng);
    const double expected = testing::vddl_per_point_reference(pred, gt, 1e-8);
    ASSERT_NEAR(vddl_loss(pred, gt).total, expected, 1e-12 * std::max(1.0, expected));
  }
}

TEST(VddlLoss, ZeroLengthSegmentIsBounded)
{
  const auto gt = make({{0, 0}, {1, 0}, {2, 0}});
  const auto pred = make({{0, 0}, {0, 0}, {2, 0}});
  const auto b = vddl_loss(pred, gt);
  EXPECT_EQ(b.segment_cos[0], 0.0);
  EXPECT_TRUE(std::isfinite(b.total));
  for (const auto & g : b.grad) {
    EXPECT_TRUE(std::isfinite(g.x));
    EXPECT_TRUE(std::isfinite(g.y));
  }
}

TEST(VddlLoss, BreakdownInvariants)
{
  SeededRng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const auto topo = trial % 3 == 0 ? Topology::closed : Topology::open;
    const auto gt = testing::random_instance(rng, 2 + rng.below(25), topo);
    const auto pred = testing::jittered(gt, 1.0, rng);
    const auto b = vddl_loss(pred, gt);
    double bound = 0.0;
    const std::size_t n = gt.points.size();
    for (std::size_t s = 0; s < b.segment_cos.size(); ++s) {
      ASSERT_GE(b.segment_cos[s], -1.0 - 1e-9);
      ASSERT_LE(b.segment_cos[s], 1.0 + 1e-9);
      bound += 2.0 * (b.point_weights[s] + b.point_weights[(s + 1) % n]);
    }
    for (double c : b.gt_turn_cos) {
      ASSERT_GE(c, -1.0 - 1e-9);
      ASSERT_LE(c, 1.0 + 1e-9);
    }
    for (double w : b.point_weights) {
      ASSERT_GE(w, 1.0);
      ASSERT_LE(w, std::numbers::e);
    }
    if (topo == Topology::open) {
      ASSERT_EQ(b.point_weights.front(), 1.0);
      ASSERT_EQ(b.point_weights.back(), 1.0);
    }
    ASSERT_GE(b.total, 0.0);
    ASSERT_LE(b.total, bound);
    ASSERT_EQ(b.grad.size(), n);
  }
}

TEST(VddlGrad, StationaryWhenAligned)
{
  const auto gt = make({{0, 0}, {1, 0}, {2, 1}, {4, 1}, {5, 3}});
  for (const auto & g : vddl_grad(gt, gt)) EXPECT_LE(norm(g), 1e-6);
}

TEST(VddlGrad, MatchesFiniteDifferences)
{
  SeededRng rng(0);
  const VddlConfig cfg;
  for (int trial = 0; trial < 100; ++trial) {
    const auto topo = trial % 2 ? Topology::closed : Topology::open;
    const auto gt = testing::random_instance(rng, 20, topo);
    const auto pred = testing::jittered(gt, 0.3, rng);
    const auto numeric = testing::finite_difference_grad(
      [&](const MapInstance & p) { return vddl_loss(p, gt, cfg).total; }, pred, 1e-5);
    ASSERT_LT(testing::relative_error(vddl_grad(pred, gt, cfg), numeric), 1e-4) << "trial " << trial;
  }
}

TEST(VddlGrad, TranslationDoesNotChangeGradient)
{
  SeededRng rng(21);
  const auto gt = testing::random_instance(rng, 12, Topology::open);
  const auto pred = testing::jittered(gt, 0.4, rng);
  auto moved = pred;
  for (auto & p : moved.points) p = p + Point2{3.25, -7.5};
  const auto a = vddl_grad(pred, gt);
  const auto b = vddl_grad(moved, gt);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].x, b[i].x, 1e-9);
    EXPECT_NEAR(a[i].y, b[i].y, 1e-9);
  }
}

TEST(VddlLoss, TranslationAndScaleInvariance)
{
  SeededRng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto topo = trial % 2 ? Topology::closed : Topology::open;
    const auto gt = testing::random_instance(rng, 2 + rng.below(20), topo);
    const auto pred = testing::jittered(gt, 0.5, rng);
    const double base = vddl_loss(pred, gt).total;

    const Point2 t{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    auto shifted = pred;
    for (auto & p : shifted.points) p = p + t;
    ASSERT_NEAR(vddl_loss(shifted, gt).total, base, 1e-12);

    const double k = rng.uniform(0.1, 10.0);
    const Point2 c{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    auto scaled = pred;
    for (auto & p : scaled.points) p = c + k * (p - c);
    ASSERT_NEAR(vddl_loss(scaled, gt).total, base, 1e-9);
  }
}

TEST(VddlLoss, MonotoneInAlternatingJitter)
{
  std::vector<Point2> line;
  for (int i = 0; i < 20; ++i) line.push_back({0.0, 2.0 * i});
  const auto gt = make(line);
  double previous = -1.0;
  for (double a : {0.0, 0.05, 0.1, 0.2, 0.4}) {
    auto pred = gt;
    for (std::size_t j = 0; j < pred.points.size(); ++j) pred.points[j].x += j % 2 ? -a : a;
    const double total = vddl_loss(pred, gt).total;
    EXPECT_GT(total, previous) << "amplitude " << a;
    previous = total;
  }
}

TEST(CombinedLoss, Composition)
{
  const auto pred = make({{0, 0}, {1, 1}, {2, 0}});
  const auto gt = make({{0, 0}, {1, 0}, {2, 0}});
  const auto c = combined_loss(pred, gt);
  EXPECT_NEAR(c.l1, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.total, 5.0 / 3.0 + kZigzagOnLine, 1e-12);

  VddlConfig l1_only;
  l1_only.lambda_vddl = 0.0;
  EXPECT_NEAR(combined_loss(pred, gt, l1_only).total, 5.0 / 3.0, 1e-15);
  EXPECT_LE(combined_loss(gt, gt).total, 1e-6);
}

TEST(CombinedLoss, GradientMatchesFiniteDifferencesAwayFromKinks)
{
  SeededRng rng(4);
  const VddlConfig cfg;
  const auto gt = testing::random_instance(rng, 15, Topology::open);
  const auto pred = testing::jittered(gt, 0.3, rng);
  const auto numeric = testing::finite_difference_grad(
    [&](const MapInstance & p) { return combined_loss(p, gt, cfg).total; }, pred, 1e-6);
  EXPECT_LT(testing::relative_error(combined_loss(pred, gt, cfg).grad, numeric), 1e-4);
}

TEST(VddlConfig, Validation)
{
  VddlConfig cfg;
  cfg.epsilon = 0.0;
  EXPECT_THROW(validate(cfg), InvalidInput);
  cfg = {};
  cfg.lambda_l1 = -1.0;
  EXPECT_THROW(validate(cfg), InvalidInput);
}

}  // namespace
}  // namespace vecmap
