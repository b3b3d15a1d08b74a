#include "pgtbench/sensor.hpp"

#include <cmath>
#include <sstream>

#include "pgtbench/grid_io.hpp"
#include "pgtbench/rng.hpp"
#include "pgtbench/traversal.hpp"

namespace pgtbench {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// fov / angular_resolution is often an integer in degrees that lands a hair
// below it in radians (360 / 0.09 -> 3999.9999...).
constexpr double kBeamCountSlack = 1e-9;

SensorSpec make(std::string name, double range, double fov_deg, std::optional<double> sigma,
                std::optional<double> ang_deg, double cycle_ms) {
  SensorSpec s;
  s.model_name = std::move(name);
  s.max_range = range;
  s.min_range = kDefaultMinRange;
  s.assumed_min_range = true;
  s.fov_horizontal = fov_deg * kDeg;
  s.range_accuracy_sigma = sigma.value_or(kDefaultRangeAccuracy);
  s.assumed_range_accuracy = !sigma.has_value();
  s.angular_resolution = ang_deg.value_or(kDefaultAngularAccuracyDeg) * kDeg;
  s.assumed_angular_resolution = !ang_deg.has_value();
  s.cycle_time = cycle_ms / 1000.0;
  return s;
}

}  // namespace

int SensorSpec::beam_count() const {
  return static_cast<int>(std::floor(fov_horizontal / angular_resolution + kBeamCountSlack)) + 1;
}

void SensorSpec::validate() const {
  auto fail = [&](const std::string& field, const std::string& what) {
    throw DataError("sensor." + field + ": " + what);
  };
  if (!(min_range >= 0)) fail("min_range", "must be >= 0");
  if (!(max_range > min_range) || !std::isfinite(max_range))
    fail("max_range", "must be finite and > min_range");
  if (!(fov_horizontal > 0) || fov_horizontal > 2.0 * std::numbers::pi + 1e-12)
    fail("fov_horizontal", "must be in (0, 360] degrees");
  if (!(angular_resolution > 0)) fail("angular_resolution", "must be > 0");
  if (!(range_accuracy_sigma >= 0) || !std::isfinite(range_accuracy_sigma))
    fail("range_accuracy_sigma", "must be >= 0");
  if (!(cycle_time > 0)) fail("cycle_time", "must be > 0");
}

const std::vector<SensorSpec>& builtin_sensor_catalog() {
  static const std::vector<SensorSpec> catalog = {
      make("Quanergy M8-1", 150.0, 360.0, 0.05, 0.03, 33.0),
      make("Ibeo LUX", 200.0, 110.0, 0.10, 0.125, 20.0),
      make("Continental SRL1", 10.0, 27.0, 0.10, std::nullopt, 10.0),
      make("Velodyne HDL-64ES2", 120.0, 360.0, 0.02, 0.09, 50.0),
      make("Velodyne Alpha Puck", 300.0, 360.0, 0.03, 0.11, 50.0),
      make("Ouster OS-2", 250.0, 45.0, std::nullopt, 0.175, 50.0),
  };
  return catalog;
}

std::optional<SensorSpec> find_sensor(std::string_view model_name) {
  for (const auto& s : builtin_sensor_catalog())
    if (s.model_name == model_name) return s;
  return std::nullopt;
}

std::string sensor_catalog_csv() {
  std::ostringstream out;
  out << "model,range_m,fov_horizontal_deg,accuracy_distance_m,accuracy_angle_deg,cycle_time_ms,"
         "min_range_m,assumed\n";
  for (const auto& s : builtin_sensor_catalog()) {
    out << s.model_name << ',' << format_shortest(s.max_range) << ','
        << format_shortest(std::round(s.fov_horizontal / kDeg * 1e9) / 1e9) << ','
        << (s.assumed_range_accuracy ? std::string("-") : format_shortest(s.range_accuracy_sigma))
        << ','
        << (s.assumed_angular_resolution
                ? std::string("-")
                : format_shortest(std::round(s.angular_resolution / kDeg * 1e9) / 1e9))
        << ',' << format_shortest(std::round(s.cycle_time * 1e3 * 1e9) / 1e9) << ','
        << format_shortest(s.min_range) << ',' << (s.assumed() ? "true" : "false") << '\n';
  }
  return out.str();
}

std::optional<double> raycast(const OccupancyGrid& gt, const Point2D& origin,
                              const Point2D& direction, double max_range) {
  std::optional<double> hit;
  walk_ray(gt.geometry(), origin, direction, max_range,
           [&](const CellIndex& cell, double t_enter, double) {
             if (t_enter > max_range) return false;
             if (gt.occupied(cell)) {
               hit = t_enter;
               return false;
             }
             return true;
           });
  return hit;
}

PointCloud scan(const OccupancyGrid& gt, const Pose2D& pose, const SensorSpec& spec,
                const FrameKey& key, double timestamp) {
  if (!gt.geometry().contains(pose.position))
    throw DataError("scan: pose (" + format_shortest(pose.x()) + ", " + format_shortest(pose.y()) +
                    ") outside the grid");
  PointCloud cloud;
  cloud.frame_id = key.frame_id;
  cloud.timestamp = timestamp;
  const int n = spec.beam_count();
  cloud.beams.resize(static_cast<std::size_t>(n));
  const double upper = spec.max_range + 3.0 * spec.range_accuracy_sigma;
  for (int k = 0; k < n; ++k) {
    BeamReturn& beam = cloud.beams[static_cast<std::size_t>(k)];
    beam.azimuth = spec.beam_azimuth(k);
    const auto d = raycast(gt, pose.position, beam_direction(pose, beam.azimuth), spec.max_range);
    if (!d || *d < spec.min_range || *d > spec.max_range) continue;
    double r = *d;
    if (spec.range_accuracy_sigma > 0) {
      RngStream rng(key.seed, static_cast<std::uint64_t>(key.frame_id),
                    static_cast<std::uint64_t>(k), RngStage::kRangeNoise);
      r += rng.normal(0.0, spec.range_accuracy_sigma);
    }
    beam.range = std::clamp(r, spec.min_range, upper);
  }
  return cloud;
}

}  // namespace pgtbench
