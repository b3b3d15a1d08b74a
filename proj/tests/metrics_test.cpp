#include "pgtbench/metrics.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pgtbench/pgt.hpp"

namespace pgtbench {
namespace {

// A 1-row grid whose cell probabilities are the given values.
OccupancyGrid row_of_probabilities(const std::vector<double>& p) {
  OccupancyGrid g(GridGeometry{static_cast<int>(p.size()), 1, 0.1, Point2D::Zero()});
  for (std::size_t i = 0; i < p.size(); ++i)
    update_cell(g, {static_cast<int>(i), 0}, prob_to_logodds(p[i]));
  return g;
}

OccupancyGrid binary_row(const std::vector<int>& occ) {
  OccupancyGrid g(GridGeometry{static_cast<int>(occ.size()), 1, 0.1, Point2D::Zero()});
  for (std::size_t i = 0; i < occ.size(); ++i)
    update_cell(g, {static_cast<int>(i), 0}, occ[i] ? kLogOddsMax : kLogOddsMin);
  return g;
}

CellMask all_true(const OccupancyGrid& g) {
  return CellMask::Constant(g.geometry().height, g.geometry().width, true);
}

// Definitional oracles over plain vectors.
struct Series {
  std::vector<double> x, y;
};
Series masked(const OccupancyGrid& pgt, const OccupancyGrid& gt, const CellMask& m) {
  Series s;
  for (int r = 0; r < pgt.geometry().height; ++r)
    for (int c = 0; c < pgt.geometry().width; ++c)
      if (m(r, c)) {
        s.x.push_back(1.0 - 1.0 / (1.0 + std::exp(pgt.at({c, r}))));
        s.y.push_back(gt.at({c, r}) > 0 ? 1.0 : 0.0);
      }
  return s;
}
double oracle_pearson(const Series& s) {
  const double n = static_cast<double>(s.x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < s.x.size(); ++i) mx += s.x[i] / n, my += s.y[i] / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    sxy += (s.x[i] - mx) * (s.y[i] - my);
    sxx += (s.x[i] - mx) * (s.x[i] - mx);
    syy += (s.y[i] - my) * (s.y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}
double oracle_map_score(const Series& s) {
  double sum = 0;
  for (std::size_t i = 0; i < s.x.size(); ++i)
    sum += s.y[i] == 1.0 ? s.x[i] : 1.0 - s.x[i];
  return sum / static_cast<double>(s.x.size());
}
double oracle_ocr(const Series& s) {
  int occ = 0, hit = 0;
  for (std::size_t i = 0; i < s.x.size(); ++i)
    if (s.y[i] == 1.0) {
      ++occ;
      hit += s.x[i] > 0.5;
    }
  return static_cast<double>(hit) / occ;
}

TEST(Pearson, PerfectAndAnti) {
  const OccupancyGrid gt = binary_row({1, 0, 1, 1, 0});
  EXPECT_EQ(pearson(gt, gt, all_true(gt)), 1.0);
  const OccupancyGrid anti = binary_row({0, 1, 0, 0, 1});
  EXPECT_EQ(pearson(anti, gt, all_true(gt)), -1.0);
}

TEST(Pearson, FourCellExample) {
  const OccupancyGrid pgt = row_of_probabilities({0.9, 0.8, 0.2, 0.1});
  const OccupancyGrid gt = binary_row({1, 1, 0, 0});
  const auto r = pearson(pgt, gt, all_true(gt));
  ASSERT_TRUE(r);
  EXPECT_NEAR(*r, 0.98994949366116653, 1e-12);
}

TEST(Pearson, UndefinedCases) {
  const OccupancyGrid gt = binary_row({1, 1, 1});
  EXPECT_FALSE(pearson(row_of_probabilities({0.2, 0.6, 0.9}), gt, all_true(gt)));
  const OccupancyGrid mixed = binary_row({1, 0, 1});
  EXPECT_FALSE(pearson(row_of_probabilities({0.7, 0.7, 0.7}), mixed, all_true(gt)));
  EXPECT_FALSE(pearson(mixed, mixed, CellMask::Constant(1, 3, false)));
}

TEST(Pearson, InvariantUnderPositiveAffineMap) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::vector<double> p(40), q(40);
  std::vector<int> g(40);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = u(gen);
    q[i] = 0.02 + 0.5 * p[i];
    g[i] = u(gen) > 0.5;
  }
  const OccupancyGrid gt = binary_row(g);
  const auto a = pearson(row_of_probabilities(p), gt, all_true(gt));
  const auto b = pearson(row_of_probabilities(q), gt, all_true(gt));
  EXPECT_NEAR(*a, *b, 1e-12);
}

TEST(MapScore, Examples) {
  const OccupancyGrid gt = binary_row({1, 0});
  EXPECT_NEAR(map_score(row_of_probabilities({0.7, 0.4}), gt, all_true(gt)), 0.65, 1e-12);
  EXPECT_DOUBLE_EQ(map_score(row_of_probabilities({0.5, 0.5}), gt, all_true(gt)), 0.5);
  const OccupancyGrid perfect = binary_row({1, 0});
  EXPECT_NEAR(map_score(perfect, gt, all_true(gt)), 1.0, 1e-4);
  EXPECT_THROW(map_score(perfect, gt, CellMask::Constant(1, 2, false)), DataError);
}

TEST(MapScore, ComplementSumsToOne) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  std::vector<double> p(50), q(50);
  std::vector<int> g(50);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = u(gen);
    g[i] = u(gen) > 0.3;
  }
  const OccupancyGrid pgt = row_of_probabilities(p);
  OccupancyGrid flipped(pgt.geometry());
  flipped.assign(-pgt.cells());
  const OccupancyGrid gt = binary_row(g);
  EXPECT_NEAR(map_score(pgt, gt, all_true(gt)) + map_score(flipped, gt, all_true(gt)), 1.0, 1e-12);
}

TEST(Ocr, CountingFixture) {
  std::vector<double> p(14, 0.1);
  std::vector<int> g(14, 0);
  for (int i = 0; i < 10; ++i) g[static_cast<std::size_t>(i)] = 1;
  for (int i = 0; i < 8; ++i) p[static_cast<std::size_t>(i)] = 0.8;
  const OccupancyGrid gt = binary_row(g);
  EXPECT_NEAR(*occupied_cells_ratio(row_of_probabilities(p), gt, all_true(gt)), 0.8, 1e-15);
  EXPECT_EQ(*occupied_cells_ratio(gt, gt, all_true(gt)), 1.0);
  EXPECT_EQ(*occupied_cells_ratio(row_of_probabilities(std::vector<double>(14, 0.2)), gt, all_true(gt)), 0.0);
  EXPECT_FALSE(occupied_cells_ratio(gt, binary_row(std::vector<int>(14, 0)), all_true(gt)));
}

TEST(Ocr, MonotoneInThreshold) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  std::vector<double> p(200);
  std::vector<int> g(200);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = u(gen), g[i] = u(gen) > 0.5;
  const OccupancyGrid pgt = row_of_probabilities(p);
  const OccupancyGrid gt = binary_row(g);
  double prev = 2.0;
  for (double t = 0.05; t < 1.0; t += 0.05) {
    const double v = *occupied_cells_ratio(pgt, gt, all_true(gt), t);
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(Kpis, MatchDefinitionalOraclesOnRandomGrids) {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> l(-10, 10), u(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const GridGeometry geo{20, 20, 0.1, Point2D::Zero()};
    OccupancyGrid pgt(geo), gt(geo, kLogOddsMin);
    CellMask mask(20, 20);
    for (int r = 0; r < 20; ++r)
      for (int c = 0; c < 20; ++c) {
        update_cell(pgt, {c, r}, l(gen));
        if (u(gen) < 0.3) update_cell(gt, {c, r}, 20.0);
        mask(r, c) = u(gen) < 0.7;
      }
    const Series s = masked(pgt, gt, mask);
    EXPECT_NEAR(*pearson(pgt, gt, mask), oracle_pearson(s), 1e-12);
    EXPECT_NEAR(map_score(pgt, gt, mask), oracle_map_score(s), 1e-12);
    EXPECT_NEAR(*occupied_cells_ratio(pgt, gt, mask), oracle_ocr(s), 1e-12);
  }
}

TEST(Evaluate, BinarizedGtOverOwnMask) {
  const OccupancyGrid gt = binary_row({1, 0, 0, 1, 0});
  const KpiReport rep = evaluate(gt, gt, KpiThresholds{1.0, 0.99, 1.0});
  EXPECT_EQ(rep.pearson, 1.0);
  EXPECT_NEAR(*rep.map_score, 1.0, 1e-4);
  EXPECT_EQ(rep.occupied_cells_ratio, 1.0);
  EXPECT_EQ(rep.n_observed, 5);
  EXPECT_EQ(rep.n_gt_occupied_observed, 2);
  EXPECT_TRUE(rep.valid);
}

TEST(Evaluate, EmptyMaskIsInvalid) {
  const OccupancyGrid gt = binary_row({1, 0});
  const KpiReport rep = evaluate(OccupancyGrid(gt.geometry()), gt, KpiThresholds{});
  EXPECT_FALSE(rep.pearson);
  EXPECT_FALSE(rep.map_score);
  EXPECT_FALSE(rep.occupied_cells_ratio);
  EXPECT_FALSE(rep.valid);
}

TEST(Evaluate, MisalignedGridsRejected) {
  const OccupancyGrid a(GridGeometry{4, 4, 0.1, Point2D::Zero()});
  const OccupancyGrid b(GridGeometry{4, 4, 0.1, Point2D(0.05, 0)});
  const OccupancyGrid c(GridGeometry{4, 4, 0.2, Point2D::Zero()});
  EXPECT_THROW(evaluate(a, b, {}), DataError);
  EXPECT_THROW(evaluate(a, c, {}), DataError);
}

TEST(Report, JsonRoundTrip) {
  KpiReport r;
  r.pearson = 0.123456789012345678;
  r.map_score = 0.9;
  r.n_observed = 17;
  r.n_gt_occupied_observed = 3;
  r.thresholds = {0.5, 0.6, 0.7};
  EXPECT_EQ(report_from_json(report_to_json(r)), r);
  EXPECT_THROW(report_from_json("{\"pearson\": 1}"), DataError);
}

TEST(Report, CsvRow) {
  KpiReport r;
  r.pearson = 0.5;
  r.map_score = 0.75;
  r.n_observed = 9;
  EXPECT_EQ(report_csv_row("room", "rain", 10, r), "room,rain,10,0.5,0.75,,9,false");
}

TEST(Thresholds, Validation) {
  EXPECT_THROW((KpiThresholds{1.5, 0.9, 0.9}).validate(), DataError);
  EXPECT_THROW((KpiThresholds{0.9, -0.1, 0.9}).validate(), DataError);
  EXPECT_NO_THROW((KpiThresholds{-0.5, 0.9, 0.9}).validate());
}

}  // namespace
}  // namespace pgtbench
