#ifndef PGTBENCH_WORLD_HPP_
#define PGTBENCH_WORLD_HPP_

#include <vector>

#include "pgtbench/core_types.hpp"

namespace pgtbench {

/// Axis-aligned box obstacle with a surface reflectivity in (0, 1].
struct Obstacle {
  Point2D min = Point2D::Zero();
  Point2D max = Point2D::Zero();
  double reflectivity = 1.0;

  bool contains(const Point2D& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
  }
  /// Euclidean distance from `p` to the box, 0 inside.
  double distance(const Point2D& p) const {
    const Point2D d = (min - p).cwiseMax(p - max).cwiseMax(0.0);
    return d.norm();
  }
  bool operator==(const Obstacle& o) const {
    return min == o.min && max == o.max && reflectivity == o.reflectivity;
  }
};

/// Static world: a [0,width] x [0,height] rectangle with box obstacles.
struct WorldModel {
  double width = 0.0;
  double height = 0.0;
  std::vector<Obstacle> obstacles;
  bool surface_wet = false;

  void validate() const;
  bool operator==(const WorldModel&) const = default;
};

/// Grid frame covering the world bounds: origin (0,0), ceil(size/res) cells.
GridGeometry world_grid_geometry(const WorldModel& world, double resolution);

/// Binary GT grid: kLogOddsMax where the cell center lies inside an obstacle,
/// kLogOddsMin elsewhere.
OccupancyGrid rasterize_world(const WorldModel& world, double resolution);

/// Reflectivity of the obstacle nearest to `p`, or 1 when there are none.
double reflectivity_at(const WorldModel& world, const Point2D& p);

struct Trajectory {
  std::vector<Pose2D> waypoints;
  double speed = 1.0;  // m/s

  void validate() const;
  bool operator==(const Trajectory&) const = default;
};

struct TimedPose {
  double timestamp = 0.0;
  Pose2D pose;
};

/// Samples the piecewise-linear waypoint path at constant arc-length spacing
/// speed * cycle_time. Headings follow the segment direction. The final
/// waypoint is appended when the regular spacing does not land on it.
std::vector<TimedPose> sample_trajectory(const Trajectory& trajectory, double cycle_time);

}  // namespace pgtbench

#endif  // PGTBENCH_WORLD_HPP_
