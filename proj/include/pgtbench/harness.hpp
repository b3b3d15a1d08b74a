#ifndef PGTBENCH_HARNESS_HPP_
#define PGTBENCH_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pgtbench/metrics.hpp"
#include "pgtbench/scenario.hpp"

namespace pgtbench {

/// Everything the logger keeps for one sensor frame.
struct FrameRecord {
  std::int64_t seq_id = 0;
  double timestamp = 0.0;
  Pose2D pose;
  PerturbedCloud raw_cloud;
  PointCloud filtered_cloud;
  std::vector<std::size_t> removed_indices;

  bool operator==(const FrameRecord&) const = default;
};

/// Filter scoring against Clutter labels.
struct FilterStats {
  long true_positives = 0;   // Clutter beams removed
  long false_positives = 0;  // Genuine beams removed
  long false_negatives = 0;  // Clutter beams kept

  std::optional<double> precision() const;
  std::optional<double> recall() const;
  bool operator==(const FilterStats&) const = default;
};

struct RunResult {
  OccupancyGrid gt;
  OccupancyGrid pgt;
  KpiReport report;
  std::vector<FrameRecord> frames;
  std::optional<std::filesystem::path> log_path;
  FilterStats filter_stats;
};

/// GT rasterization, trajectory sampling at the sensor cycle time, then per
/// pose: scan, weather, filter, log; accumulation of the filtered clouds and
/// evaluation. When `out_dir` is given the outputs are written there as
/// gt.grid, pgt.grid, frames.jsonl, report.json, gt.pgm and pgt.pgm.
RunResult run_scenario(const Scenario& scenario,
                       const std::optional<std::filesystem::path>& out_dir = std::nullopt);

/// JSON-lines frame log. One FrameRecord per line; beams as
/// [azimuth, range|null, "G"|"C"|"D"].
std::string frame_to_json_line(const FrameRecord& frame);
FrameRecord frame_from_json_line(const std::string& line, std::size_t line_no = 1);
void write_log(const std::vector<FrameRecord>& frames, const std::filesystem::path& path);
std::vector<FrameRecord> read_log(const std::filesystem::path& path);
std::vector<FrameRecord> read_log_text(const std::string& text);

enum class SweepParameter { kRainRate, kFogVisibility, kSnowRate, kSunLevel };

std::optional<SweepParameter> parse_sweep_parameter(const std::string& name);
std::string to_string(SweepParameter p);

/// `base` with its weather replaced by the swept condition. Infinite fog
/// visibility means clear weather.
Scenario with_parameter(const Scenario& base, SweepParameter parameter, double value,
                        std::uint64_t seed);

struct SweepRow {
  double value = 0.0;
  std::uint64_t seed = 0;
  std::string weather_kind;
  KpiReport report;
};

/// One run per (value, seed), ordered by value then seed. Runs execute on up
/// to `threads` workers (0 = hardware concurrency).
std::vector<SweepRow> sweep(const Scenario& base, SweepParameter parameter,
                            const std::vector<double>& values,
                            const std::vector<std::uint64_t>& seeds, unsigned threads = 0);

/// CSV with the per-run columns and a trailing seed column.
std::string sweep_csv(const std::string& scenario_id, const std::vector<SweepRow>& rows);

/// Binary PGM (P5), one pixel per cell, value round(255 (1 - p)), row 0 on top.
std::string grid_to_pgm(const OccupancyGrid& grid);
void export_grid_image(const OccupancyGrid& grid, const std::filesystem::path& path);

}  // namespace pgtbench

#endif  // PGTBENCH_HARNESS_HPP_
