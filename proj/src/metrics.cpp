#include "pgtbench/metrics.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "pgtbench/grid_io.hpp"

namespace pgtbench {

namespace {

void check_shapes(const OccupancyGrid& pgt, const OccupancyGrid& gt, const CellMask& mask) {
  if (pgt.width() != gt.width() || pgt.height() != gt.height() || mask.rows() != pgt.height() ||
      mask.cols() != pgt.width())
    throw DataError("metrics: grid dimensions do not match");
}

// Masked cells as dense vectors: x = PGT probability, y = GT occupancy (0/1).
struct MaskedSeries {
  Eigen::ArrayXd x;
  Eigen::ArrayXd y;
};

MaskedSeries gather(const OccupancyGrid& pgt, const OccupancyGrid& gt, const CellMask& mask) {
  check_shapes(pgt, gt, mask);
  const Eigen::Index n = mask.count();
  MaskedSeries s{Eigen::ArrayXd(n), Eigen::ArrayXd(n)};
  const auto& lp = pgt.cells();
  const auto& lg = gt.cells();
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < mask.rows(); ++r) {
    for (Eigen::Index c = 0; c < mask.cols(); ++c) {
      if (!mask(r, c)) continue;
      s.x(k) = logodds_to_prob(lp(r, c));
      s.y(k) = lg(r, c) > 0 ? 1.0 : 0.0;
      ++k;
    }
  }
  return s;
}

std::string opt_to_csv(const std::optional<double>& v) { return v ? format_shortest(*v) : ""; }

}  // namespace

void KpiThresholds::validate() const {
  if (!(pearson_min >= -1 && pearson_min <= 1)) throw DataError("thresholds.pearson: not in [-1, 1]");
  if (!(map_score_min >= 0 && map_score_min <= 1))
    throw DataError("thresholds.map_score: not in [0, 1]");
  if (!(ocr_min >= 0 && ocr_min <= 1)) throw DataError("thresholds.ocr: not in [0, 1]");
}

std::optional<double> pearson(const OccupancyGrid& pgt, const OccupancyGrid& gt,
                              const CellMask& mask) {
  const MaskedSeries s = gather(pgt, gt, mask);
  if (s.x.size() == 0) return std::nullopt;
  if (s.x.minCoeff() == s.x.maxCoeff() || s.y.minCoeff() == s.y.maxCoeff()) return std::nullopt;
  const Eigen::ArrayXd dx = s.x - s.x.mean();
  const Eigen::ArrayXd dy = s.y - s.y.mean();
  const double sxx = dx.square().sum();
  const double syy = dy.square().sum();
  const double r = (dx * dy).sum() / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double map_score(const OccupancyGrid& pgt, const OccupancyGrid& gt, const CellMask& mask) {
  const MaskedSeries s = gather(pgt, gt, mask);
  if (s.x.size() == 0) throw DataError("map_score: empty mask");
  return (s.y * s.x + (1.0 - s.y) * (1.0 - s.x)).mean();
}

std::optional<double> occupied_cells_ratio(const OccupancyGrid& pgt, const OccupancyGrid& gt,
                                           const CellMask& mask, double occ_threshold) {
  if (!(occ_threshold > 0 && occ_threshold < 1))
    throw DataError("occupied_cells_ratio: threshold must be in (0, 1)");
  const MaskedSeries s = gather(pgt, gt, mask);
  const Eigen::Index occupied = (s.y > 0.5).count();
  if (occupied == 0) return std::nullopt;
  const Eigen::Index detected = ((s.y > 0.5) && (s.x > occ_threshold)).count();
  return static_cast<double>(detected) / static_cast<double>(occupied);
}

KpiReport evaluate(const OccupancyGrid& pgt, const OccupancyGrid& gt,
                   const KpiThresholds& thresholds) {
  if (!pgt.geometry().aligned_with(gt.geometry()))
    throw DataError("grids not geographically aligned");
  KpiReport rep;
  rep.thresholds = thresholds;
  const CellMask mask = observed_mask(pgt);
  rep.n_observed = static_cast<long>(mask.count());
  rep.n_gt_occupied_observed = static_cast<long>((mask && (gt.cells() > 0)).count());
  if (rep.n_observed == 0) return rep;
  rep.pearson = pearson(pgt, gt, mask);
  rep.map_score = map_score(pgt, gt, mask);
  rep.occupied_cells_ratio = occupied_cells_ratio(pgt, gt, mask);
  rep.valid = rep.pearson && rep.map_score && rep.occupied_cells_ratio &&
              *rep.pearson >= thresholds.pearson_min &&
              *rep.map_score >= thresholds.map_score_min &&
              *rep.occupied_cells_ratio >= thresholds.ocr_min;
  return rep;
}

std::string report_to_json(const KpiReport& r) {
  nlohmann::ordered_json j;
  auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  j["pearson"] = opt(r.pearson);
  j["map_score"] = opt(r.map_score);
  j["occupied_cells_ratio"] = opt(r.occupied_cells_ratio);
  j["n_observed"] = r.n_observed;
  j["n_gt_occupied_observed"] = r.n_gt_occupied_observed;
  j["valid"] = r.valid;
  j["threshold_pearson"] = r.thresholds.pearson_min;
  j["threshold_map_score"] = r.thresholds.map_score_min;
  j["threshold_ocr"] = r.thresholds.ocr_min;
  return j.dump(2);
}

KpiReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    KpiReport r;
    auto opt = [&](const char* key) -> std::optional<double> {
      const auto& v = j.at(key);
      if (v.is_null()) return std::nullopt;
      return v.get<double>();
    };
    r.pearson = opt("pearson");
    r.map_score = opt("map_score");
    r.occupied_cells_ratio = opt("occupied_cells_ratio");
    r.n_observed = j.at("n_observed").get<long>();
    r.n_gt_occupied_observed = j.at("n_gt_occupied_observed").get<long>();
    r.valid = j.at("valid").get<bool>();
    r.thresholds.pearson_min = j.at("threshold_pearson").get<double>();
    r.thresholds.map_score_min = j.at("threshold_map_score").get<double>();
    r.thresholds.ocr_min = j.at("threshold_ocr").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("report: ") + e.what());
  }
}

std::string report_csv_header() {
  return "scenario_id,weather_kind,intensity,pearson,map_score,ocr,n_observed,valid";
}

std::string report_csv_row(const std::string& scenario_id, const std::string& weather_kind,
                           double intensity, const KpiReport& r) {
  std::ostringstream out;
  out << scenario_id << ',' << weather_kind << ',' << format_shortest(intensity) << ','
      << opt_to_csv(r.pearson) << ',' << opt_to_csv(r.map_score) << ','
      << opt_to_csv(r.occupied_cells_ratio) << ',' << r.n_observed << ','
      << (r.valid ? "true" : "false");
  return out.str();
}

}  // namespace pgtbench
