// Command-line front end: run, eval, sweep, catalog, render.
//
// Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 internal
// invariant violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgtbench/grid_io.hpp"
#include "pgtbench/harness.hpp"
#include "pgtbench/metrics.hpp"
#include "pgtbench/scenario.hpp"
#include "pgtbench/sensor.hpp"
#include "pgtbench/weather.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("bad " + what + " '" + token + "'");
}

std::uint64_t parse_u64(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(token, &used);
    if (used == token.size() && !token.empty() && token[0] != '-') return v;
  } catch (const std::exception&) {
  }
  throw UsageError("bad " + what + " '" + token + "'");
}

std::vector<double> parse_values(const std::string& s) {
  std::vector<double> values;
  for (const auto& t : split(s, ',')) values.push_back(parse_double(t, "value"));
  if (values.empty()) throw UsageError("--values: need at least one value");
  return values;
}

// "1..5" or "1,2,7".
std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  if (auto dots = s.find(".."); dots != std::string::npos) {
    const auto lo = parse_u64(s.substr(0, dots), "seed");
    const auto hi = parse_u64(s.substr(dots + 2), "seed");
    if (hi < lo) throw UsageError("--seeds: empty range " + s);
    for (auto v = lo; v <= hi; ++v) seeds.push_back(v);
  } else {
    for (const auto& t : split(s, ',')) seeds.push_back(parse_u64(t, "seed"));
  }
  if (seeds.empty()) throw UsageError("--seeds: need at least one seed");
  return seeds;
}

pgtbench::KpiThresholds parse_thresholds(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError("--thresholds: expected p,m,o");
  pgtbench::KpiThresholds t;
  t.pearson_min = parse_double(parts[0], "threshold");
  t.map_score_min = parse_double(parts[1], "threshold");
  t.ocr_min = parse_double(parts[2], "threshold");
  t.validate();
  return t;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pgtbench::DataError("cannot open " + path + " for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LiDAR pseudo-ground-truth benchmark"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  auto* run = app.add_subcommand("run", "Run one scenario and write its outputs");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();

  std::string pgt_path, gt_path, thresholds = "0.95,0.90,0.90";
  auto* eval = app.add_subcommand("eval", "Compare a PGT grid against a GT grid");
  eval->add_option("--pgt", pgt_path, "PGT grid file")->required();
  eval->add_option("--gt", gt_path, "GT grid file")->required();
  eval->add_option("--thresholds", thresholds, "pearson,map_score,ocr minimums");

  std::string sweep_param, sweep_values, sweep_seeds, sweep_out;
  unsigned sweep_threads = 0;
  auto* sw = app.add_subcommand("sweep", "Sweep one weather parameter over values and seeds");
  sw->add_option("scenario", scenario_path, "Base scenario JSON file")->required();
  sw->add_option("--param", sweep_param, "rain_rate|fog_visibility|snow_rate|sun_level")
      ->required();
  sw->add_option("--values", sweep_values, "Comma-separated values (inf allowed)")->required();
  sw->add_option("--seeds", sweep_seeds, "Seed range a..b or comma list")->required();
  sw->add_option("--out", sweep_out, "Output CSV file")->required();
  sw->add_option("--threads", sweep_threads, "Worker threads (0 = all cores)");

  bool sensors = false, limitations = false;
  auto* cat = app.add_subcommand("catalog", "Print a built-in catalog as CSV");
  auto* sensors_flag = cat->add_flag("--sensors", sensors, "LiDAR product catalog");
  auto* limitations_flag = cat->add_flag("--limitations", limitations, "Limitation catalog");
  sensors_flag->excludes(limitations_flag);
  limitations_flag->excludes(sensors_flag);

  std::string grid_path, pgm_out;
  auto* render = app.add_subcommand("render", "Render a grid file as a PGM image");
  render->add_option("grid", grid_path, "Grid file")->required();
  render->add_option("--out", pgm_out, "Output PGM file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) {
      const auto scenario = pgtbench::load_scenario_file(scenario_path);
      const auto result = pgtbench::run_scenario(scenario, std::filesystem::path(out_dir));
      std::cout << pgtbench::report_to_json(result.report) << '\n';
    } else if (*eval) {
      const auto t = parse_thresholds(thresholds);
      const auto pgt = pgtbench::load_grid(pgt_path);
      const auto gt = pgtbench::load_grid(gt_path);
      std::cout << pgtbench::report_to_json(pgtbench::evaluate(pgt, gt, t)) << '\n';
    } else if (*sw) {
      const auto param = pgtbench::parse_sweep_parameter(sweep_param);
      if (!param) throw UsageError("--param: unknown parameter '" + sweep_param + "'");
      const auto values = parse_values(sweep_values);
      const auto seeds = parse_seeds(sweep_seeds);
      const auto base = pgtbench::load_scenario_file(scenario_path);
      const auto rows = pgtbench::sweep(base, *param, values, seeds, sweep_threads);
      write_file(sweep_out, pgtbench::sweep_csv(base.id, rows));
    } else if (*cat) {
      if (!sensors && !limitations) throw UsageError("catalog: pass --sensors or --limitations");
      std::cout << (sensors ? pgtbench::sensor_catalog_csv() : pgtbench::limitation_catalog_csv());
    } else if (*render) {
      pgtbench::export_grid_image(pgtbench::load_grid(grid_path), pgm_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const pgtbench::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const pgtbench::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
