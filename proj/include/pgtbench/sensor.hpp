#ifndef PGTBENCH_SENSOR_HPP_
#define PGTBENCH_SENSOR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgtbench/core_types.hpp"

namespace pgtbench {

/// Physical parameters of a LiDAR product, projected onto one horizontal
/// scan line. Angles in radians, lengths in meters, times in seconds.
struct SensorSpec {
  std::string model_name;
  double max_range = 100.0;
  double min_range = 0.3;  // blind zone
  double fov_horizontal = 2.0 * std::numbers::pi;
  double angular_resolution = 0.1 * std::numbers::pi / 180.0;
  double range_accuracy_sigma = 0.0;
  double cycle_time = 0.05;

  // Set for catalog values that are defaults rather than datasheet numbers.
  bool assumed_min_range = false;
  bool assumed_range_accuracy = false;
  bool assumed_angular_resolution = false;

  bool assumed() const {
    return assumed_min_range || assumed_range_accuracy || assumed_angular_resolution;
  }

  /// floor(fov / angular_resolution) + 1.
  int beam_count() const;
  double beam_azimuth(int k) const { return -0.5 * fov_horizontal + k * angular_resolution; }

  void validate() const;
  bool operator==(const SensorSpec&) const = default;
};

inline constexpr double kDefaultMinRange = 0.3;
inline constexpr double kDefaultAngularAccuracyDeg = 0.25;
inline constexpr double kDefaultRangeAccuracy = 0.03;

/// The six product models of the evaluated-device table, in table order.
const std::vector<SensorSpec>& builtin_sensor_catalog();

/// Catalog lookup by exact model name.
std::optional<SensorSpec> find_sensor(std::string_view model_name);

/// Catalog as CSV: model, range, horizontal FoV, distance accuracy, angular
/// accuracy, cycle time (table column order), then min range and an assumed
/// flag. Blank table cells are written as "-".
std::string sensor_catalog_csv();

/// Distance along the ray to the entry boundary of the first occupied cell,
/// or nullopt if none is reached within `max_range` before leaving the grid.
/// An origin inside an occupied cell yields 0.
std::optional<double> raycast(const OccupancyGrid& gt, const Point2D& origin,
                              const Point2D& direction, double max_range);

/// Seed and frame that key the per-beam random sub-streams of one scan.
struct FrameKey {
  std::uint64_t seed = 0;
  std::int64_t frame_id = 0;
};

/// One noisy scan of `gt` from `pose`. All returns are labelled Genuine.
PointCloud scan(const OccupancyGrid& gt, const Pose2D& pose, const SensorSpec& spec,
                const FrameKey& key, double timestamp = 0.0);

}  // namespace pgtbench

#endif  // PGTBENCH_SENSOR_HPP_
