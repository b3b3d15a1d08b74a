#include "pgtbench/scenario.hpp"

#include <gtest/gtest.h>

namespace pgtbench {
namespace {

const std::filesystem::path kScenarioDir = PGTBENCH_SCENARIO_DIR;

std::string minimal(const std::string& weather = R"({"kind": "rain", "intensity": 10})",
                    const std::string& sensor = R"("Ibeo LUX")") {
  return R"({
    "world": {"bounds": [10, 8], "obstacles": [{"min": [1, 1], "max": [2, 2], "reflectivity": 0.5}]},
    "trajectory": {"waypoints": [[5, 4], [6, 4, 90]], "speed": 2},
    "sensor": )" + sensor + R"(,
    "weather": )" + weather + R"(,
    "grid_resolution": 0.1,
    "seed": 7
  })";
}

std::string error_of(const std::string& text) {
  try {
    load_scenario(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

void expect_near_equal(const Scenario& a, const Scenario& b) {
  EXPECT_EQ(a.id, b.id);
  EXPECT_EQ(a.world, b.world);
  ASSERT_EQ(a.trajectory.waypoints.size(), b.trajectory.waypoints.size());
  for (std::size_t i = 0; i < a.trajectory.waypoints.size(); ++i) {
    EXPECT_EQ(a.trajectory.waypoints[i].position, b.trajectory.waypoints[i].position);
    EXPECT_NEAR(a.trajectory.waypoints[i].heading, b.trajectory.waypoints[i].heading, 1e-12);
  }
  EXPECT_EQ(a.trajectory.speed, b.trajectory.speed);
  EXPECT_EQ(a.sensor.model_name, b.sensor.model_name);
  EXPECT_EQ(a.sensor.max_range, b.sensor.max_range);
  EXPECT_NEAR(a.sensor.fov_horizontal, b.sensor.fov_horizontal, 1e-12);
  EXPECT_NEAR(a.sensor.angular_resolution, b.sensor.angular_resolution, 1e-12);
  EXPECT_EQ(a.sensor.range_accuracy_sigma, b.sensor.range_accuracy_sigma);
  EXPECT_EQ(a.weather.kind, b.weather.kind);
  EXPECT_EQ(a.weather.intensity, b.weather.intensity);
  EXPECT_EQ(a.weather.wavelength, b.weather.wavelength);
  EXPECT_EQ(a.grid_resolution, b.grid_resolution);
  EXPECT_EQ(a.seed, b.seed);
  EXPECT_EQ(a.filter, b.filter);
  EXPECT_EQ(a.thresholds, b.thresholds);
}

TEST(Scenario, LoadsCatalogSensorByName) {
  const Scenario s = load_scenario(minimal());
  EXPECT_EQ(s.sensor.model_name, "Ibeo LUX");
  EXPECT_EQ(s.sensor.max_range, 200.0);
  EXPECT_EQ(s.weather.kind, WeatherKind::kRain);
  EXPECT_EQ(s.seed, 7u);
  EXPECT_NEAR(s.trajectory.waypoints[1].heading, std::numbers::pi / 2, 1e-15);
  EXPECT_EQ(s.filter, FilterParams{});
  EXPECT_EQ(s.thresholds, KpiThresholds{});
}

TEST(Scenario, CatalogOverrides) {
  const Scenario s =
      load_scenario(minimal(R"({"kind": "clear"})", R"({"name": "Ibeo LUX", "range_accuracy_sigma": 0})"));
  EXPECT_EQ(s.sensor.range_accuracy_sigma, 0.0);
  EXPECT_EQ(s.sensor.max_range, 200.0);
}

TEST(Scenario, RoundTripOfShippedScenarios) {
  for (const char* name : {"room.json", "room_clear.json"}) {
    const Scenario s = load_scenario_file(kScenarioDir / name);
    const std::string text = save_scenario(s);
    const Scenario back = load_scenario(text);
    expect_near_equal(s, back);
    EXPECT_EQ(save_scenario(back), text) << name;
  }
}

TEST(Scenario, RoundTripWithDirtSectorsAndWavelength) {
  Scenario s = load_scenario(minimal(R"({"kind": "dirt", "sectors": [[-30, 10], [100, 120]]})"));
  ASSERT_EQ(s.weather.dirt_sectors.size(), 2u);
  const Scenario back = load_scenario(save_scenario(s));
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(back.weather.dirt_sectors[i].first, s.weather.dirt_sectors[i].first, 1e-12);
    EXPECT_NEAR(back.weather.dirt_sectors[i].second, s.weather.dirt_sectors[i].second, 1e-12);
  }
  s = load_scenario(minimal(R"({"kind": "rain", "intensity": 40, "wavelength_class": "nm1550"})"));
  EXPECT_EQ(load_scenario(save_scenario(s)).weather.wavelength, Wavelength::kNm1550);
}

TEST(Scenario, ErrorsNameTheField) {
  std::string text = minimal();
  EXPECT_NE(error_of(minimal(R"({"kind": "hail", "intensity": 1})")).find("weather.kind"), std::string::npos);
  EXPECT_NE(error_of(minimal(R"({"kind": "rain"})")).find("weather.intensity"), std::string::npos);
  EXPECT_NE(error_of(minimal(R"({"kind": "clear"})", R"("Nope")")).find("sensor"), std::string::npos);

  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string t = text;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  EXPECT_NE(error_of(replaced("\"speed\": 2", "\"speed\": 0")).find("trajectory.speed"), std::string::npos);
  EXPECT_NE(error_of(replaced("\"grid_resolution\": 0.1", "\"grid_resolution\": -1")).find("grid_resolution"),
            std::string::npos);
  EXPECT_NE(error_of(replaced("\"seed\": 7", "\"seed\": -7")).find("seed"), std::string::npos);
  EXPECT_NE(error_of(replaced("\"seed\": 7", "\"seedx\": 7")).find("seed"), std::string::npos);
  EXPECT_NE(error_of(replaced("\"reflectivity\": 0.5", "\"reflectivity\": 0")).find("reflectivity"),
            std::string::npos);
  EXPECT_NE(error_of("{").find("invalid JSON"), std::string::npos);
}

TEST(Scenario, MissingFileIsDataError) {
  EXPECT_THROW(load_scenario_file(kScenarioDir / "does_not_exist.json"), DataError);
}

}  // namespace
}  // namespace pgtbench
