#include "pgtbench/world.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pgtbench {

namespace {

// Slack for ceil() so that e.g. 20 / 0.1 does not become 201 cells.
constexpr double kCeilSlack = 1e-9;

}  // namespace

void WorldModel::validate() const {
  if (!(width > 0) || !(height > 0) || !std::isfinite(width) || !std::isfinite(height))
    throw DataError("world.bounds: width and height must be > 0");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const auto& o = obstacles[i];
    const std::string name = "world.obstacles[" + std::to_string(i) + "]";
    if (!o.min.allFinite() || !o.max.allFinite()) throw DataError(name + ": non-finite corner");
    if (!(o.min.x() < o.max.x()) || !(o.min.y() < o.max.y()))
      throw DataError(name + ": min must be < max on both axes");
    if (o.min.x() < 0 || o.min.y() < 0 || o.max.x() > width || o.max.y() > height)
      throw DataError(name + ": outside world bounds");
    if (!(o.reflectivity > 0) || o.reflectivity > 1)
      throw DataError(name + ".reflectivity: must be in (0, 1]");
  }
}

GridGeometry world_grid_geometry(const WorldModel& world, double resolution) {
  if (!(resolution > 0)) throw DataError("grid_resolution: must be > 0");
  if (!(world.width > 0) || !(world.height > 0))
    throw DataError("world.bounds: width and height must be > 0");
  GridGeometry g;
  g.resolution = resolution;
  g.width = static_cast<int>(std::ceil(world.width / resolution - kCeilSlack));
  g.height = static_cast<int>(std::ceil(world.height / resolution - kCeilSlack));
  g.width = std::max(g.width, 1);
  g.height = std::max(g.height, 1);
  g.origin = Point2D::Zero();
  return g;
}

OccupancyGrid rasterize_world(const WorldModel& world, double resolution) {
  world.validate();
  const GridGeometry g = world_grid_geometry(world, resolution);
  OccupancyGrid::Cells cells = OccupancyGrid::Cells::Constant(g.height, g.width, kLogOddsMin);
  for (const auto& o : world.obstacles) {
    // Only cells whose centers can fall inside the box need testing.
    const int c0 = std::max(0, static_cast<int>(std::floor(o.min.x() / resolution)) - 1);
    const int c1 = std::min(g.width - 1, static_cast<int>(std::ceil(o.max.x() / resolution)) + 1);
    const int r0 = std::max(0, static_cast<int>(std::floor(o.min.y() / resolution)) - 1);
    const int r1 = std::min(g.height - 1, static_cast<int>(std::ceil(o.max.y() / resolution)) + 1);
    for (int row = r0; row <= r1; ++row) {
      for (int col = c0; col <= c1; ++col) {
        if (o.contains(g.cell_center({col, row}))) cells(row, col) = kLogOddsMax;
      }
    }
  }
  OccupancyGrid grid(g);
  grid.assign(cells);
  return grid;
}

double reflectivity_at(const WorldModel& world, const Point2D& p) {
  double best = std::numeric_limits<double>::infinity();
  double rho = 1.0;
  for (const auto& o : world.obstacles) {
    const double d = o.distance(p);
    if (d < best) {
      best = d;
      rho = o.reflectivity;
    }
  }
  return rho;
}

void Trajectory::validate() const {
  if (waypoints.empty()) throw DataError("trajectory.waypoints: need at least one waypoint");
  if (!(speed > 0) || !std::isfinite(speed)) throw DataError("trajectory.speed: must be > 0");
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    if (!waypoints[i].position.allFinite())
      throw DataError("trajectory.waypoints[" + std::to_string(i) + "]: non-finite");
    if (i > 0 && waypoints[i].position == waypoints[i - 1].position)
      throw DataError("trajectory.waypoints[" + std::to_string(i) +
                      "]: duplicates the previous waypoint");
  }
}

std::vector<TimedPose> sample_trajectory(const Trajectory& trajectory, double cycle_time) {
  if (!(cycle_time > 0)) throw DataError("cycle_time: must be > 0");
  trajectory.validate();
  const auto& wp = trajectory.waypoints;
  if (wp.size() == 1) return {TimedPose{0.0, Pose2D(wp[0].x(), wp[0].y(), 0.0)}};

  // Cumulative arc length at each waypoint.
  std::vector<double> cum(wp.size(), 0.0);
  for (std::size_t i = 1; i < wp.size(); ++i)
    cum[i] = cum[i - 1] + (wp[i].position - wp[i - 1].position).norm();
  const double total = cum.back();
  const double spacing = trajectory.speed * cycle_time;

  auto pose_at = [&](double s) {
    // Segment i spans [cum[i], cum[i+1]); the end of the path uses the last one.
    std::size_t i = 0;
    while (i + 2 < wp.size() && s >= cum[i + 1]) ++i;
    const Point2D a = wp[i].position;
    const Point2D b = wp[i + 1].position;
    const double len = cum[i + 1] - cum[i];
    const double f = std::clamp((s - cum[i]) / len, 0.0, 1.0);
    const Point2D p = a + f * (b - a);
    const Point2D d = b - a;
    return Pose2D(p.x(), p.y(), std::atan2(d.y(), d.x()));
  };

  std::vector<TimedPose> out;
  const auto full_steps = static_cast<std::int64_t>(std::floor(total / spacing + kCeilSlack));
  out.reserve(static_cast<std::size_t>(full_steps) + 2);
  for (std::int64_t k = 0; k <= full_steps; ++k) {
    const double s = std::min(static_cast<double>(k) * spacing, total);
    out.push_back({static_cast<double>(k) * cycle_time, pose_at(s)});
  }
  if (total - static_cast<double>(full_steps) * spacing > kCeilSlack) {
    out.push_back({static_cast<double>(full_steps + 1) * cycle_time, pose_at(total)});
  }
  return out;
}

}  // namespace pgtbench
