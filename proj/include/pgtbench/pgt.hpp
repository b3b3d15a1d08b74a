#ifndef PGTBENCH_PGT_HPP_
#define PGTBENCH_PGT_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pgtbench/core_types.hpp"

namespace pgtbench {

/// Dynamic-radius outlier removal parameters.
struct FilterParams {
  bool enabled = true;
  int k_min = 2;        // neighbours required to keep a point
  double beta = 3.0;    // search radius multiplier
  double sr_min = 0.1;  // minimum search radius, meters

  void validate() const;
  bool operator==(const FilterParams&) const = default;
};

/// Log-odds increments of the inverse sensor model.
struct InverseSensorModel {
  double l_occ = prob_to_logodds(0.7);
  double l_free = prob_to_logodds(0.4);

  void validate() const;
};

struct DrorResult {
  PointCloud kept;
  std::vector<std::size_t> removed;  // indices into the input beams, ascending
};

/// Keeps a point iff at least `k_min` other points lie within
/// max(sr_min, beta * range * angular_resolution) of it. `points` and
/// `ranges` are parallel; returns the indices of removed points, ascending.
/// Uses a uniform hash grid with bucket size equal to the largest radius.
std::vector<std::size_t> dror_outliers(std::span<const Point2D> points,
                                       std::span<const double> ranges,
                                       const FilterParams& params, double angular_resolution);

/// Per-frame filter over a scan. Beams without a return are never removed
/// and are not neighbours. A disabled filter returns the cloud unchanged.
DrorResult dror_filter(const PerturbedCloud& cloud, const FilterParams& params,
                       double angular_resolution);

/// One sensor frame to be fused into the map.
struct PosedCloud {
  Pose2D pose;
  PointCloud cloud;
};

/// Adds one frame to `grid` with the inverse sensor model: cells strictly
/// before the endpoint cell get l_free, the endpoint cell gets l_occ; beams
/// without a return clear space out to `max_range`.
void integrate_frame(OccupancyGrid& grid, const Pose2D& pose, const PointCloud& cloud,
                     double max_range, const InverseSensorModel& ism);

/// Fuses all frames into a fresh L=0 grid. Throws DataError naming the
/// frame_id if a pose lies outside the grid.
OccupancyGrid accumulate(std::span<const PosedCloud> frames, const GridGeometry& geometry,
                         double max_range, const InverseSensorModel& ism = {});

using CellMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// True exactly where L != 0.
CellMask observed_mask(const OccupancyGrid& pgt);

}  // namespace pgtbench

#endif  // PGTBENCH_PGT_HPP_
