#include "pgtbench/pgt.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "pgtbench/traversal.hpp"

namespace pgtbench {

namespace {

// Neighbours sitting exactly on the search radius count as inside; the slack
// absorbs rounding in the squared distance.
constexpr double kRadiusSlack = 1e-9;

}  // namespace

void FilterParams::validate() const {
  if (k_min < 0) throw DataError("filter.k_min: must be >= 0");
  if (!(beta > 0)) throw DataError("filter.beta: must be > 0");
  if (!(sr_min > 0)) throw DataError("filter.sr_min: must be > 0");
}

void InverseSensorModel::validate() const {
  if (!(l_occ > 0) || !(l_free < 0)) throw DataError("ism: need l_occ > 0 > l_free");
}

std::vector<std::size_t> dror_outliers(std::span<const Point2D> points,
                                       std::span<const double> ranges,
                                       const FilterParams& params, double angular_resolution) {
  if (points.size() != ranges.size())
    throw InvariantViolation("dror_outliers: points and ranges differ in length");
  std::vector<std::size_t> removed;
  if (params.k_min == 0 || points.empty()) return removed;

  const std::size_t n = points.size();
  std::vector<double> radius(n);
  double bucket = params.sr_min;
  for (std::size_t i = 0; i < n; ++i) {
    radius[i] = std::max(params.sr_min, params.beta * ranges[i] * angular_resolution);
    bucket = std::max(bucket, radius[i]);
  }

  auto key_of = [bucket](double x, double y) {
    const auto kx = static_cast<std::int64_t>(std::floor(x / bucket));
    const auto ky = static_cast<std::int64_t>(std::floor(y / bucket));
    return std::pair{kx, ky};
  };
  auto pack = [](std::int64_t kx, std::int64_t ky) {
    return (static_cast<std::uint64_t>(kx) << 32) ^ static_cast<std::uint64_t>(ky & 0xffffffff);
  };
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  buckets.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [kx, ky] = key_of(points[i].x(), points[i].y());
    buckets[pack(kx, ky)].push_back(i);
  }

  const auto k_min = static_cast<std::size_t>(params.k_min);
  for (std::size_t i = 0; i < n; ++i) {
    const double r2 = radius[i] * radius[i] * (1.0 + kRadiusSlack);
    const auto [kx, ky] = key_of(points[i].x(), points[i].y());
    std::size_t count = 0;
    for (std::int64_t dx = -1; dx <= 1 && count < k_min; ++dx) {
      for (std::int64_t dy = -1; dy <= 1 && count < k_min; ++dy) {
        auto it = buckets.find(pack(kx + dx, ky + dy));
        if (it == buckets.end()) continue;
        for (std::size_t j : it->second) {
          if (j == i) continue;
          if ((points[j] - points[i]).squaredNorm() <= r2 && ++count >= k_min) break;
        }
      }
    }
    if (count < k_min) removed.push_back(i);
  }
  return removed;
}

DrorResult dror_filter(const PerturbedCloud& cloud, const FilterParams& params,
                       double angular_resolution) {
  DrorResult result;
  if (!params.enabled) {
    result.kept = cloud;
    return result;
  }
  std::vector<Point2D> points;
  std::vector<double> ranges;
  std::vector<std::size_t> beam_of;
  for (std::size_t i = 0; i < cloud.beams.size(); ++i) {
    const auto& b = cloud.beams[i];
    if (!b.range) continue;
    // Sensor frame; neighbour distances are invariant under the rigid
    // transform into the world frame.
    points.emplace_back(*b.range * std::cos(b.azimuth), *b.range * std::sin(b.azimuth));
    ranges.push_back(*b.range);
    beam_of.push_back(i);
  }
  for (std::size_t idx : dror_outliers(points, ranges, params, angular_resolution))
    result.removed.push_back(beam_of[idx]);

  result.kept.frame_id = cloud.frame_id;
  result.kept.timestamp = cloud.timestamp;
  result.kept.beams.reserve(cloud.beams.size() - result.removed.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < cloud.beams.size(); ++i) {
    if (next < result.removed.size() && result.removed[next] == i) {
      ++next;
      continue;
    }
    result.kept.beams.push_back(cloud.beams[i]);
  }
  return result;
}

void integrate_frame(OccupancyGrid& grid, const Pose2D& pose, const PointCloud& cloud,
                     double max_range, const InverseSensorModel& ism) {
  const GridGeometry& g = grid.geometry();
  for (const auto& beam : cloud.beams) {
    const Point2D dir = beam_direction(pose, beam.azimuth);
    if (beam.range) {
      const double r = *beam.range;
      // Endpoint cell: the one with t_enter <= r < t_exit.
      walk_ray(g, pose.position, dir, r, [&](const CellIndex& c, double t_enter, double t_exit) {
        if (t_enter > r) return false;
        if (r < t_exit) {
          grid.update(c, ism.l_occ);
          return false;
        }
        grid.update(c, ism.l_free);
        return true;
      });
    } else {
      walk_ray(g, pose.position, dir, max_range, [&](const CellIndex& c, double t_enter, double) {
        if (t_enter >= max_range) return false;
        grid.update(c, ism.l_free);
        return true;
      });
    }
  }
}

OccupancyGrid accumulate(std::span<const PosedCloud> frames, const GridGeometry& geometry,
                         double max_range, const InverseSensorModel& ism) {
  ism.validate();
  OccupancyGrid grid(geometry);
  for (const auto& f : frames) {
    if (!geometry.contains(f.pose.position))
      throw DataError("accumulate: pose of frame " + std::to_string(f.cloud.frame_id) +
                      " lies outside the grid");
    integrate_frame(grid, f.pose, f.cloud, max_range, ism);
  }
  return grid;
}

CellMask observed_mask(const OccupancyGrid& pgt) { return pgt.cells() != 0.0; }

}  // namespace pgtbench
