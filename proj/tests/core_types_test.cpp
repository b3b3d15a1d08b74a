#include "pgtbench/core_types.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

namespace pgtbench {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(PoseTransform, IdentityPose) {
  const Point2D p = pose_transform(Pose2D(0, 0, 0), Point2D(3, 4));
  EXPECT_DOUBLE_EQ(p.x(), 3.0);
  EXPECT_DOUBLE_EQ(p.y(), 4.0);
}

TEST(PoseTransform, QuarterTurn) {
  const Point2D p = pose_transform(Pose2D(1, 2, kPi / 2), Point2D(1, 0));
  EXPECT_NEAR(p.x(), 1.0, 1e-12);
  EXPECT_NEAR(p.y(), 3.0, 1e-12);
}

TEST(PoseTransform, MatchesHomogeneousMatrixOracle) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> coord(-50, 50);
  std::uniform_real_distribution<double> angle(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    const double x = coord(gen), y = coord(gen), th = angle(gen);
    const double px = coord(gen), py = coord(gen);
    // Homogeneous 3x3 transform, built with plain arrays.
    const double m[3][3] = {{std::cos(th), -std::sin(th), x},
                            {std::sin(th), std::cos(th), y},
                            {0.0, 0.0, 1.0}};
    const double v[3] = {px, py, 1.0};
    double out[3] = {0, 0, 0};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) out[r] += m[r][c] * v[c];

    const Point2D p = pose_transform(Pose2D(x, y, th), Point2D(px, py));
    ASSERT_NEAR(p.x(), out[0], 1e-9);
    ASSERT_NEAR(p.y(), out[1], 1e-9);
  }
}

TEST(PoseTransform, InverseRoundTrip) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> coord(-100, 100);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const Pose2D pose(coord(gen), coord(gen), angle(gen));
    const Point2D p(coord(gen), coord(gen));
    const Point2D back = pose_transform(pose.inverse(), pose_transform(pose, p));
    ASSERT_NEAR((back - p).norm(), 0.0, 1e-9);
  }
}

TEST(Pose, HeadingNormalizedToHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(Pose2D(0, 0, kPi).heading, -kPi);
  EXPECT_NEAR(Pose2D(0, 0, 3 * kPi / 2).heading, -kPi / 2, 1e-12);
  EXPECT_NEAR(Pose2D(0, 0, -5 * kPi / 2).heading, -kPi / 2, 1e-12);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> angle(-100, 100);
  for (int i = 0; i < 1000; ++i) {
    const double h = Pose2D(0, 0, angle(gen)).heading;
    ASSERT_GE(h, -kPi);
    ASSERT_LT(h, kPi);
  }
}

TEST(WorldToCell, FirstCell) {
  GridGeometry g{100, 100, 0.1, Point2D(0, 0)};
  auto c = g.world_to_cell(Point2D(0.05, 0.05));
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (CellIndex{0, 0}));
}

TEST(WorldToCell, BoundaryBelongsToUpperCell) {
  GridGeometry g{100, 100, 0.1, Point2D(0, 0)};
  auto c = g.world_to_cell(Point2D(0.1, 0.0));
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (CellIndex{1, 0}));
}

TEST(WorldToCell, OutOfBounds) {
  GridGeometry g{100, 100, 0.1, Point2D(0, 0)};
  EXPECT_FALSE(g.world_to_cell(Point2D(-0.01, 0)));
  EXPECT_FALSE(g.world_to_cell(Point2D(10.0, 5.0)));
  EXPECT_FALSE(g.world_to_cell(Point2D(5.0, 10.0)));
}

TEST(WorldToCell, CellCenterRoundTrip) {
  GridGeometry g{37, 23, 0.13, Point2D(-1.7, 4.2)};
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c) {
      auto idx = g.world_to_cell(g.cell_center({c, r}));
      ASSERT_TRUE(idx);
      ASSERT_EQ(*idx, (CellIndex{c, r}));
    }
}

TEST(LogOdds, KnownValues) {
  EXPECT_DOUBLE_EQ(logodds_to_prob(0.0), 0.5);
  EXPECT_NEAR(logodds_to_prob(std::log(0.7 / 0.3)), 0.7, 1e-12);
  EXPECT_NEAR(logodds_to_prob(-10.0), 4.5397868702434395e-05, 1e-15);
}

TEST(LogOdds, MonotoneAndSymmetric) {
  double prev = -1.0;
  for (double l = -10.0; l <= 10.0; l += 0.01) {
    const double p = logodds_to_prob(l);
    ASSERT_GT(p, prev);
    ASSERT_NEAR(logodds_to_prob(-l), 1.0 - p, 1e-12);
    prev = p;
  }
}

TEST(LogOdds, ArrayOverloadMatchesScalar) {
  Eigen::ArrayXd l = Eigen::ArrayXd::LinSpaced(41, -10, 10);
  const Eigen::ArrayXd p = logodds_to_prob(l);
  for (Eigen::Index i = 0; i < l.size(); ++i) EXPECT_DOUBLE_EQ(p(i), logodds_to_prob(l(i)));
}

TEST(UpdateCell, AddsAndClamps) {
  OccupancyGrid grid(GridGeometry{4, 3, 0.1, Point2D::Zero()});
  const double l_occ = 0.847;
  update_cell(grid, {1, 1}, l_occ);
  EXPECT_DOUBLE_EQ(grid.at({1, 1}), 0.847);

  OccupancyGrid hi(GridGeometry{1, 1, 0.1, Point2D::Zero()}, 9.9);
  update_cell(hi, {0, 0}, l_occ);
  EXPECT_DOUBLE_EQ(hi.at({0, 0}), kLogOddsMax);

  OccupancyGrid rep(GridGeometry{1, 1, 0.1, Point2D::Zero()});
  double expected = 0.0;
  for (int i = 0; i < 10; ++i) {
    update_cell(rep, {0, 0}, l_occ);
    expected += l_occ;
  }
  EXPECT_NEAR(rep.at({0, 0}), 8.47, 1e-12);
  EXPECT_DOUBLE_EQ(rep.at({0, 0}), expected);
}

TEST(UpdateCell, RejectsOutOfBounds) {
  OccupancyGrid grid(GridGeometry{4, 3, 0.1, Point2D::Zero()});
  EXPECT_THROW(update_cell(grid, {4, 0}, 1.0), DataError);
  EXPECT_THROW(update_cell(grid, {0, -1}, 1.0), DataError);
}

TEST(OccupancyGrid, CellsStayInRangeUnderRandomUpdates) {
  std::mt19937_64 gen(5);
  OccupancyGrid grid(GridGeometry{8, 8, 0.5, Point2D::Zero()});
  std::uniform_int_distribution<int> cell(0, 7);
  std::uniform_real_distribution<double> delta(-4, 4);
  for (int i = 0; i < 20000; ++i) update_cell(grid, {cell(gen), cell(gen)}, delta(gen));
  EXPECT_GE(grid.cells().minCoeff(), kLogOddsMin);
  EXPECT_LE(grid.cells().maxCoeff(), kLogOddsMax);
}

TEST(OccupancyGrid, RejectsDegenerateGeometry) {
  EXPECT_THROW(OccupancyGrid(GridGeometry{0, 3, 0.1, Point2D::Zero()}), DataError);
  EXPECT_THROW(OccupancyGrid(GridGeometry{3, 3, 0.0, Point2D::Zero()}), DataError);
}

}  // namespace
}  // namespace pgtbench
