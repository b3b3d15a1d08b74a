#include "pgtbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pgtbench/grid_io.hpp"
#include "pgtbench/pgt.hpp"
#include "pgtbench/sensor.hpp"
#include "pgtbench/weather.hpp"

namespace pgtbench {

std::optional<double> FilterStats::precision() const {
  const long d = true_positives + false_positives;
  if (d == 0) return std::nullopt;
  return static_cast<double>(true_positives) / static_cast<double>(d);
}

std::optional<double> FilterStats::recall() const {
  const long d = true_positives + false_negatives;
  if (d == 0) return std::nullopt;
  return static_cast<double>(true_positives) / static_cast<double>(d);
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw DataError("failed writing " + path.string());
}

void score_filter(const PerturbedCloud& raw, const std::vector<std::size_t>& removed,
                  FilterStats& stats) {
  std::size_t next = 0;
  for (std::size_t i = 0; i < raw.beams.size(); ++i) {
    const bool was_removed = next < removed.size() && removed[next] == i;
    if (was_removed) ++next;
    const BeamLabel label = raw.beams[i].label;
    if (label == BeamLabel::kClutter) {
      (was_removed ? stats.true_positives : stats.false_negatives)++;
    } else if (was_removed && label == BeamLabel::kGenuine) {
      stats.false_positives++;
    }
  }
}

}  // namespace

RunResult run_scenario(const Scenario& scenario,
                       const std::optional<std::filesystem::path>& out_dir) {
  scenario.validate();
  RunResult result;
  result.gt = rasterize_world(scenario.world, scenario.grid_resolution);
  result.pgt = OccupancyGrid(result.gt.geometry());
  const InverseSensorModel ism;

  const auto samples = sample_trajectory(scenario.trajectory, scenario.sensor.cycle_time);
  result.frames.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& [t, pose] = samples[k];
    const auto frame_id = static_cast<std::int64_t>(k);
    if (!result.gt.geometry().contains(pose.position))
      throw DataError("scenario '" + scenario.id + "': pose of frame " + std::to_string(frame_id) +
                      " at (" + format_shortest(pose.x()) + ", " + format_shortest(pose.y()) +
                      ") lies outside the grid");

    FrameRecord rec;
    rec.seq_id = frame_id;
    rec.timestamp = t;
    rec.pose = pose;
    const PointCloud clean =
        scan(result.gt, pose, scenario.sensor, FrameKey{scenario.seed, frame_id}, t);
    rec.raw_cloud = apply_weather(clean, pose, scenario.weather, scenario.sensor,
                                  scenario.world, scenario.seed);
    DrorResult filtered =
        dror_filter(rec.raw_cloud, scenario.filter, scenario.sensor.angular_resolution);
    score_filter(rec.raw_cloud, filtered.removed, result.filter_stats);
    rec.filtered_cloud = std::move(filtered.kept);
    rec.removed_indices = std::move(filtered.removed);

    integrate_frame(result.pgt, pose, rec.filtered_cloud, scenario.sensor.max_range, ism);
    result.frames.push_back(std::move(rec));
  }

  result.report = evaluate(result.pgt, result.gt, scenario.thresholds);

  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    save_grid(*out_dir / "gt.grid", result.gt);
    save_grid(*out_dir / "pgt.grid", result.pgt);
    write_log(result.frames, *out_dir / "frames.jsonl");
    write_text(*out_dir / "report.json", report_to_json(result.report) + "\n");
    export_grid_image(result.gt, *out_dir / "gt.pgm");
    export_grid_image(result.pgt, *out_dir / "pgt.pgm");
    result.log_path = *out_dir / "frames.jsonl";
  }
  return result;
}

// ---------------------------------------------------------------------------
// Frame log.

namespace {

using Json = nlohmann::json;

const char* label_code(BeamLabel l) {
  switch (l) {
    case BeamLabel::kGenuine: return "G";
    case BeamLabel::kClutter: return "C";
    case BeamLabel::kDropped: return "D";
  }
  return "?";
}

BeamLabel parse_label(const std::string& s) {
  if (s == "G") return BeamLabel::kGenuine;
  if (s == "C") return BeamLabel::kClutter;
  if (s == "D") return BeamLabel::kDropped;
  throw DataError("unknown beam label '" + s + "'");
}

Json cloud_to_json(const PointCloud& c) {
  Json beams = Json::array();
  for (const auto& b : c.beams) {
    beams.push_back(Json::array(
        {b.azimuth, b.range ? Json(*b.range) : Json(nullptr), label_code(b.label)}));
  }
  return Json{{"frame_id", c.frame_id}, {"timestamp", c.timestamp}, {"beams", std::move(beams)}};
}

PointCloud cloud_from_json(const Json& j) {
  PointCloud c;
  c.frame_id = j.at("frame_id").get<std::int64_t>();
  c.timestamp = j.at("timestamp").get<double>();
  for (const auto& b : j.at("beams")) {
    if (!b.is_array() || b.size() != 3) throw DataError("beam must be [azimuth, range, label]");
    BeamReturn r;
    r.azimuth = b[0].get<double>();
    if (!b[1].is_null()) r.range = b[1].get<double>();
    r.label = parse_label(b[2].get<std::string>());
    c.beams.push_back(r);
  }
  return c;
}

}  // namespace

std::string frame_to_json_line(const FrameRecord& f) {
  Json j;
  j["seq_id"] = f.seq_id;
  j["timestamp"] = f.timestamp;
  j["pose"] = {f.pose.x(), f.pose.y(), f.pose.heading};
  j["raw_cloud"] = cloud_to_json(f.raw_cloud);
  j["filtered_cloud"] = cloud_to_json(f.filtered_cloud);
  j["removed_indices"] = f.removed_indices;
  return j.dump();
}

FrameRecord frame_from_json_line(const std::string& line, std::size_t line_no) {
  try {
    const Json j = Json::parse(line);
    FrameRecord f;
    f.seq_id = j.at("seq_id").get<std::int64_t>();
    f.timestamp = j.at("timestamp").get<double>();
    const Json& p = j.at("pose");
    if (!p.is_array() || p.size() != 3) throw DataError("pose must be [x, y, heading]");
    f.pose.position = Point2D(p[0].get<double>(), p[1].get<double>());
    f.pose.heading = p[2].get<double>();
    f.raw_cloud = cloud_from_json(j.at("raw_cloud"));
    f.filtered_cloud = cloud_from_json(j.at("filtered_cloud"));
    f.removed_indices = j.at("removed_indices").get<std::vector<std::size_t>>();
    return f;
  } catch (const std::exception& e) {
    throw DataError("frame log line " + std::to_string(line_no) + ": " + e.what());
  }
}

void write_log(const std::vector<FrameRecord>& frames, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (i > 0 && frames[i].seq_id <= frames[i - 1].seq_id)
      throw InvariantViolation("write_log: seq_id not strictly increasing");
    out << frame_to_json_line(frames[i]) << '\n';
  }
  if (!out) throw DataError("failed writing " + path.string());
}

std::vector<FrameRecord> read_log_text(const std::string& text) {
  std::vector<FrameRecord> frames;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    frames.push_back(frame_from_json_line(line, line_no));
    if (frames.size() > 1 && frames.back().seq_id <= frames[frames.size() - 2].seq_id)
      throw DataError("frame log line " + std::to_string(line_no) +
                      ": seq_id not strictly increasing");
  }
  return frames;
}

std::vector<FrameRecord> read_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_log_text(ss.str());
}

// ---------------------------------------------------------------------------
// Sweeps.

std::optional<SweepParameter> parse_sweep_parameter(const std::string& name) {
  if (name == "rain_rate") return SweepParameter::kRainRate;
  if (name == "fog_visibility") return SweepParameter::kFogVisibility;
  if (name == "snow_rate") return SweepParameter::kSnowRate;
  if (name == "sun_level") return SweepParameter::kSunLevel;
  return std::nullopt;
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::kRainRate: return "rain_rate";
    case SweepParameter::kFogVisibility: return "fog_visibility";
    case SweepParameter::kSnowRate: return "snow_rate";
    case SweepParameter::kSunLevel: return "sun_level";
  }
  return "?";
}

Scenario with_parameter(const Scenario& base, SweepParameter parameter, double value,
                        std::uint64_t seed) {
  Scenario s = base;
  s.seed = seed;
  const Wavelength wl = base.weather.wavelength;
  switch (parameter) {
    case SweepParameter::kRainRate: s.weather = WeatherCondition::rain(value); break;
    case SweepParameter::kFogVisibility:
      s.weather = std::isinf(value) ? WeatherCondition::clear() : WeatherCondition::fog(value);
      break;
    case SweepParameter::kSnowRate: s.weather = WeatherCondition::snow(value); break;
    case SweepParameter::kSunLevel: s.weather = WeatherCondition::sunlight(value); break;
  }
  s.weather.wavelength = wl;
  return s;
}

std::vector<SweepRow> sweep(const Scenario& base, SweepParameter parameter,
                            const std::vector<double>& values,
                            const std::vector<std::uint64_t>& seeds, unsigned threads) {
  if (values.empty()) throw DataError("sweep: no parameter values given");
  if (seeds.empty()) throw DataError("sweep: no seeds given");

  std::vector<SweepRow> rows;
  for (double v : values)
    for (std::uint64_t seed : seeds) rows.push_back(SweepRow{v, seed, {}, {}});

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));

  // Each worker owns whole runs; rows are pre-ordered so the result order
  // does not depend on scheduling.
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(rows.size());
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        const Scenario s = with_parameter(base, parameter, rows[i].value, rows[i].seed);
        rows[i].weather_kind = std::string(to_string(s.weather.kind));
        rows[i].report = run_scenario(s).report;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string sweep_csv(const std::string& scenario_id, const std::vector<SweepRow>& rows) {
  std::string out = report_csv_header() + ",seed\n";
  for (const auto& r : rows)
    out += report_csv_row(scenario_id, r.weather_kind, r.value, r.report) + "," +
           std::to_string(r.seed) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Images.

std::string grid_to_pgm(const OccupancyGrid& grid) {
  std::string out = "P5\n" + std::to_string(grid.width()) + " " + std::to_string(grid.height()) +
                    "\n255\n";
  const auto& cells = grid.cells();
  out.reserve(out.size() + static_cast<std::size_t>(grid.width() * grid.height()));
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      const double p = logodds_to_prob(cells(row, col));
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * (1.0 - p)))));
    }
  }
  return out;
}

void export_grid_image(const OccupancyGrid& grid, const std::filesystem::path& path) {
  write_text(path, grid_to_pgm(grid));
}

}  // namespace pgtbench
