#ifndef PGTBENCH_SCENARIO_HPP_
#define PGTBENCH_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "pgtbench/metrics.hpp"
#include "pgtbench/pgt.hpp"
#include "pgtbench/sensor.hpp"
#include "pgtbench/weather.hpp"
#include "pgtbench/world.hpp"

namespace pgtbench {

/// One benchmarking case.
struct Scenario {
  std::string id = "scenario";
  WorldModel world;
  Trajectory trajectory;
  SensorSpec sensor;
  WeatherCondition weather;
  double grid_resolution = 0.1;
  std::uint64_t seed = 0;
  FilterParams filter;
  KpiThresholds thresholds;

  void validate() const;
  bool operator==(const Scenario&) const = default;
};

// JSON schema (lengths in meters, angles in degrees):
//
// {
//   "id": "room",                                    optional
//   "world": {"bounds": [w, h],
//             "obstacles": [{"min": [x, y], "max": [x, y], "reflectivity": r}],
//             "surface_wet": false},
//   "trajectory": {"waypoints": [[x, y] | [x, y, heading_deg], ...], "speed": v},
//   "sensor": "Velodyne HDL-64ES2"
//           | {"name": "Velodyne HDL-64ES2", <overrides>}
//           | {"model_name": ..., "max_range": ..., "min_range": ...,
//              "fov_horizontal_deg": ..., "angular_resolution_deg": ...,
//              "range_accuracy_sigma": ..., "cycle_time": ...},
//   "weather": {"kind": "rain", "intensity": 20, "wavelength_class": "nm905",
//               "sectors": [[lo_deg, hi_deg], ...]},
//   "grid_resolution": 0.1,
//   "seed": 1,
//   "filter": {"enabled": true, "k_min": 2, "beta": 3, "sr_min": 0.1},
//   "thresholds": {"pearson": 0.95, "map_score": 0.9, "ocr": 0.9}
// }
//
// Parse errors are DataError and name the offending field.

Scenario load_scenario(const std::string& json_text);
std::string save_scenario(const Scenario& scenario);

Scenario load_scenario_file(const std::filesystem::path& path);

}  // namespace pgtbench

#endif  // PGTBENCH_SCENARIO_HPP_
