#ifndef PGTBENCH_METRICS_HPP_
#define PGTBENCH_METRICS_HPP_

#include <optional>
#include <string>

#include "pgtbench/core_types.hpp"
#include "pgtbench/pgt.hpp"

namespace pgtbench {

struct KpiThresholds {
  double pearson_min = 0.95;
  double map_score_min = 0.90;
  double ocr_min = 0.90;

  void validate() const;
  bool operator==(const KpiThresholds&) const = default;
};

struct KpiReport {
  std::optional<double> pearson;               // nullopt = undefined
  std::optional<double> map_score;             // nullopt only for an empty mask
  std::optional<double> occupied_cells_ratio;  // nullopt = undefined
  long n_observed = 0;
  long n_gt_occupied_observed = 0;
  bool valid = false;
  KpiThresholds thresholds;

  bool operator==(const KpiReport&) const = default;
};

/// Pearson r between PGT occupancy probabilities and binary GT over `mask`.
/// Undefined for an empty mask or when either series is constant.
std::optional<double> pearson(const OccupancyGrid& pgt, const OccupancyGrid& gt,
                              const CellMask& mask);

/// Mean probability the PGT assigns to the true GT state over `mask`:
///   MS = (1/N) sum[ g p + (1 - g)(1 - p) ].
/// Throws DataError on an empty mask.
double map_score(const OccupancyGrid& pgt, const OccupancyGrid& gt, const CellMask& mask);

/// Fraction of GT-occupied masked cells the PGT also calls occupied
/// (p > occ_threshold). Undefined when the mask holds no GT-occupied cell.
std::optional<double> occupied_cells_ratio(const OccupancyGrid& pgt, const OccupancyGrid& gt,
                                           const CellMask& mask, double occ_threshold = 0.5);

/// All KPIs over the observed mask of `pgt` and the validity verdict.
/// Throws DataError("grids not geographically aligned") on a frame mismatch.
KpiReport evaluate(const OccupancyGrid& pgt, const OccupancyGrid& gt,
                   const KpiThresholds& thresholds);

/// Flat JSON object.
std::string report_to_json(const KpiReport& report);
KpiReport report_from_json(const std::string& text);

/// Header and one row of the per-run CSV.
std::string report_csv_header();
std::string report_csv_row(const std::string& scenario_id, const std::string& weather_kind,
                           double intensity, const KpiReport& report);

}  // namespace pgtbench

#endif  // PGTBENCH_METRICS_HPP_
