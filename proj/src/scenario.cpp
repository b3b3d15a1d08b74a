#include "pgtbench/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pgtbench {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw DataError("scenario field '" + field + "': " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}


double number(const Json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(field, "must be finite");
  return d;
}

double positive(const Json& v, const std::string& field) {
  const double d = number(v, field);
  if (!(d > 0)) fail(field, "must be > 0");
  return d;
}

double non_negative(const Json& v, const std::string& field) {
  const double d = number(v, field);
  if (!(d >= 0)) fail(field, "must be >= 0");
  return d;
}

bool boolean(const Json& v, const std::string& field) {
  if (!v.is_boolean()) fail(field, "expected true or false");
  return v.get<bool>();
}

Point2D point(const Json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) fail(field, "expected [x, y]");
  return {number(v[0], field + "[0]"), number(v[1], field + "[1]")};
}

WorldModel parse_world(const Json& j) {
  WorldModel w;
  const Json& bounds = require(j, "bounds", "world");
  if (!bounds.is_array() || bounds.size() != 2) fail("world.bounds", "expected [width, height]");
  w.width = positive(bounds[0], "world.bounds[0]");
  w.height = positive(bounds[1], "world.bounds[1]");
  if (auto it = j.find("obstacles"); it != j.end()) {
    if (!it->is_array()) fail("world.obstacles", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = "world.obstacles[" + std::to_string(i) + "]";
      const Json& o = (*it)[i];
      Obstacle ob;
      ob.min = point(require(o, "min", p), p + ".min");
      ob.max = point(require(o, "max", p), p + ".max");
      ob.reflectivity = o.contains("reflectivity") ? positive(o["reflectivity"], p + ".reflectivity") : 1.0;
      w.obstacles.push_back(ob);
    }
  }
  if (auto it = j.find("surface_wet"); it != j.end()) w.surface_wet = boolean(*it, "world.surface_wet");
  return w;
}

Trajectory parse_trajectory(const Json& j) {
  Trajectory t;
  const Json& wps = require(j, "waypoints", "trajectory");
  if (!wps.is_array()) fail("trajectory.waypoints", "expected an array");
  for (std::size_t i = 0; i < wps.size(); ++i) {
    const std::string p = "trajectory.waypoints[" + std::to_string(i) + "]";
    const Json& w = wps[i];
    if (!w.is_array() || (w.size() != 2 && w.size() != 3)) fail(p, "expected [x, y] or [x, y, heading_deg]");
    const double heading = w.size() == 3 ? number(w[2], p + "[2]") * kDegToRad : 0.0;
    t.waypoints.emplace_back(number(w[0], p + "[0]"), number(w[1], p + "[1]"), heading);
  }
  t.speed = positive(require(j, "speed", "trajectory"), "trajectory.speed");
  return t;
}

void apply_sensor_fields(SensorSpec& s, const Json& j) {
  if (auto it = j.find("model_name"); it != j.end()) {
    if (!it->is_string()) fail("sensor.model_name", "expected a string");
    s.model_name = it->get<std::string>();
  }
  if (auto it = j.find("max_range"); it != j.end()) s.max_range = positive(*it, "sensor.max_range");
  if (auto it = j.find("min_range"); it != j.end()) s.min_range = non_negative(*it, "sensor.min_range");
  if (auto it = j.find("fov_horizontal_deg"); it != j.end())
    s.fov_horizontal = positive(*it, "sensor.fov_horizontal_deg") * kDegToRad;
  if (auto it = j.find("angular_resolution_deg"); it != j.end())
    s.angular_resolution = positive(*it, "sensor.angular_resolution_deg") * kDegToRad;
  if (auto it = j.find("range_accuracy_sigma"); it != j.end())
    s.range_accuracy_sigma = non_negative(*it, "sensor.range_accuracy_sigma");
  if (auto it = j.find("cycle_time"); it != j.end()) s.cycle_time = positive(*it, "sensor.cycle_time");
  if (auto it = j.find("assumed_min_range"); it != j.end())
    s.assumed_min_range = boolean(*it, "sensor.assumed_min_range");
  if (auto it = j.find("assumed_range_accuracy"); it != j.end())
    s.assumed_range_accuracy = boolean(*it, "sensor.assumed_range_accuracy");
  if (auto it = j.find("assumed_angular_resolution"); it != j.end())
    s.assumed_angular_resolution = boolean(*it, "sensor.assumed_angular_resolution");
}

SensorSpec parse_sensor(const Json& j) {
  if (j.is_string()) {
    auto s = find_sensor(j.get<std::string>());
    if (!s) fail("sensor", "unknown catalog model '" + j.get<std::string>() + "'");
    return *s;
  }
  if (!j.is_object()) fail("sensor", "expected a catalog name or an object");
  SensorSpec s;
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) fail("sensor.name", "expected a string");
    auto base = find_sensor(it->get<std::string>());
    if (!base) fail("sensor.name", "unknown catalog model '" + it->get<std::string>() + "'");
    s = *base;
  } else {
    for (const char* key : {"model_name", "max_range", "fov_horizontal_deg",
                            "angular_resolution_deg", "range_accuracy_sigma", "cycle_time"})
      require(j, key, "sensor");
  }
  apply_sensor_fields(s, j);
  return s;
}

WeatherCondition parse_weather(const Json& j) {
  WeatherCondition w;
  const Json& kind = require(j, "kind", "weather");
  if (!kind.is_string()) fail("weather.kind", "expected a string");
  auto k = parse_weather_kind(kind.get<std::string>());
  if (!k) fail("weather.kind", "unknown weather kind '" + kind.get<std::string>() + "'");
  w.kind = *k;
  const bool needs_intensity = w.kind != WeatherKind::kClear && w.kind != WeatherKind::kDirtSectors;
  if (auto it = j.find("intensity"); it != j.end()) {
    w.intensity = w.kind == WeatherKind::kFog ? positive(*it, "weather.intensity")
                                              : non_negative(*it, "weather.intensity");
  } else if (needs_intensity) {
    fail("weather.intensity", "missing required field");
  }
  if (auto it = j.find("wavelength_class"); it != j.end()) {
    if (!it->is_string()) fail("weather.wavelength_class", "expected \"nm905\" or \"nm1550\"");
    auto wl = parse_wavelength(it->get<std::string>());
    if (!wl) fail("weather.wavelength_class", "unknown wavelength '" + it->get<std::string>() + "'");
    w.wavelength = *wl;
  }
  if (auto it = j.find("sectors"); it != j.end()) {
    if (!it->is_array()) fail("weather.sectors", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Point2D s = point((*it)[i], "weather.sectors[" + std::to_string(i) + "]");
      w.dirt_sectors.emplace_back(s.x() * kDegToRad, s.y() * kDegToRad);
    }
  } else if (w.kind == WeatherKind::kDirtSectors) {
    fail("weather.sectors", "missing required field");
  }
  try {
    w.validate();
  } catch (const DataError& e) {
    throw DataError(std::string("scenario field ") + e.what());
  }
  return w;
}

}  // namespace

void Scenario::validate() const {
  world.validate();
  trajectory.validate();
  sensor.validate();
  weather.validate();
  filter.validate();
  thresholds.validate();
  if (!(grid_resolution > 0)) throw DataError("grid_resolution: must be > 0");
}

Scenario load_scenario(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw DataError(std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("scenario: top level must be an object");

  Scenario s;
  if (auto it = j.find("id"); it != j.end()) {
    if (!it->is_string()) fail("id", "expected a string");
    s.id = it->get<std::string>();
  }
  s.world = parse_world(require(j, "world", ""));
  s.trajectory = parse_trajectory(require(j, "trajectory", ""));
  s.sensor = parse_sensor(require(j, "sensor", ""));
  s.weather = parse_weather(require(j, "weather", ""));
  s.grid_resolution = positive(require(j, "grid_resolution", ""), "grid_resolution");
  const Json& seed = require(j, "seed", "");
  if (!seed.is_number_unsigned()) fail("seed", "expected a non-negative integer");
  s.seed = seed.get<std::uint64_t>();

  // Both blocks are optional; absent keys keep the library defaults.
  if (auto fit = j.find("filter"); fit != j.end()) {
    const Json& f = *fit;
    if (!f.is_object()) fail("filter", "expected an object");
    if (auto it = f.find("enabled"); it != f.end()) s.filter.enabled = boolean(*it, "filter.enabled");
    if (auto it = f.find("k_min"); it != f.end()) {
      if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
        fail("filter.k_min", "expected a non-negative integer");
      s.filter.k_min = it->get<int>();
    }
    if (auto it = f.find("beta"); it != f.end()) s.filter.beta = positive(*it, "filter.beta");
    if (auto it = f.find("sr_min"); it != f.end()) s.filter.sr_min = positive(*it, "filter.sr_min");
  }
  if (auto tit = j.find("thresholds"); tit != j.end()) {
    const Json& t = *tit;
    if (!t.is_object()) fail("thresholds", "expected an object");
    if (auto it = t.find("pearson"); it != t.end())
      s.thresholds.pearson_min = number(*it, "thresholds.pearson");
    if (auto it = t.find("map_score"); it != t.end())
      s.thresholds.map_score_min = number(*it, "thresholds.map_score");
    if (auto it = t.find("ocr"); it != t.end()) s.thresholds.ocr_min = number(*it, "thresholds.ocr");
  }

  s.validate();
  return s;
}

std::string save_scenario(const Scenario& s) {
  OrderedJson j;
  j["id"] = s.id;

  OrderedJson world;
  world["bounds"] = {s.world.width, s.world.height};
  world["obstacles"] = OrderedJson::array();
  for (const auto& o : s.world.obstacles) {
    OrderedJson oj;
    oj["min"] = {o.min.x(), o.min.y()};
    oj["max"] = {o.max.x(), o.max.y()};
    oj["reflectivity"] = o.reflectivity;
    world["obstacles"].push_back(oj);
  }
  world["surface_wet"] = s.world.surface_wet;
  j["world"] = world;

  OrderedJson traj;
  traj["waypoints"] = OrderedJson::array();
  for (const auto& w : s.trajectory.waypoints)
    traj["waypoints"].push_back({w.x(), w.y(), w.heading * kRadToDeg});
  traj["speed"] = s.trajectory.speed;
  j["trajectory"] = traj;

  OrderedJson sensor;
  sensor["model_name"] = s.sensor.model_name;
  sensor["max_range"] = s.sensor.max_range;
  sensor["min_range"] = s.sensor.min_range;
  sensor["fov_horizontal_deg"] = s.sensor.fov_horizontal * kRadToDeg;
  sensor["angular_resolution_deg"] = s.sensor.angular_resolution * kRadToDeg;
  sensor["range_accuracy_sigma"] = s.sensor.range_accuracy_sigma;
  sensor["cycle_time"] = s.sensor.cycle_time;
  sensor["assumed_min_range"] = s.sensor.assumed_min_range;
  sensor["assumed_range_accuracy"] = s.sensor.assumed_range_accuracy;
  sensor["assumed_angular_resolution"] = s.sensor.assumed_angular_resolution;
  j["sensor"] = sensor;

  OrderedJson weather;
  weather["kind"] = std::string(to_string(s.weather.kind));
  weather["intensity"] = s.weather.intensity;
  weather["wavelength_class"] = std::string(to_string(s.weather.wavelength));
  if (!s.weather.dirt_sectors.empty()) {
    weather["sectors"] = OrderedJson::array();
    for (const auto& [lo, hi] : s.weather.dirt_sectors)
      weather["sectors"].push_back({lo * kRadToDeg, hi * kRadToDeg});
  }
  j["weather"] = weather;

  j["grid_resolution"] = s.grid_resolution;
  j["seed"] = s.seed;
  j["filter"] = {{"enabled", s.filter.enabled},
                 {"k_min", s.filter.k_min},
                 {"beta", s.filter.beta},
                 {"sr_min", s.filter.sr_min}};
  j["thresholds"] = {{"pearson", s.thresholds.pearson_min},
                     {"map_score", s.thresholds.map_score_min},
                     {"ocr", s.thresholds.ocr_min}};
  return j.dump(2) + "\n";
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_scenario(ss.str());
}

}  // namespace pgtbench
