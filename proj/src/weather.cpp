#include "pgtbench/weather.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pgtbench/rng.hpp"

namespace pgtbench {

const std::vector<LimitationEntry>& limitation_catalog() {
  using C = LimitationCategory;
  using E = Evidence;
  static const std::vector<LimitationEntry> catalog = {
      {1, "Road dirt on sensor cover", C::kObstructing, E::kBoth, true},
      {2, "First detection close object", C::kObstructing, E::kExperimental, true},
      {3, "Material/surfaces", C::kObstructing, E::kBoth, true},
      {4, "Wet roadway causes road spray", C::kAttenuatingNoise, E::kExperimental, true},
      {5, "Rain", C::kAttenuatingNoise, E::kBoth, true},
      {6, "Fog/Mist/Haze", C::kAttenuatingNoise, E::kBoth, true},
      {7, "Snow", C::kAttenuatingNoise, E::kBoth, true},
      {8, "Dust", C::kAttenuatingNoise, E::kMention, false},
      {9, "Wavelength related", C::kAttenuatingNoise, E::kExperimental, false},
      {10, "Sunlight", C::kAttenuatingNoise, E::kBoth, true},
      {11, "Temperature", C::kOther, E::kMention, false},
      {12, "Vibrations", C::kOther, E::kMention, false},
      {13, "Interference", C::kOther, E::kExperimental, false},
      {14, "Remote attacks (imitating signal)", C::kOther, E::kExperimental, false},
  };
  return catalog;
}

std::string_view to_string(LimitationCategory c) {
  switch (c) {
    case LimitationCategory::kObstructing: return "Ob";
    case LimitationCategory::kAttenuatingNoise: return "AN";
    case LimitationCategory::kOther: return "Ot";
  }
  return "?";
}

std::string_view to_string(Evidence e) {
  switch (e) {
    case Evidence::kMention: return "Mention";
    case Evidence::kExperimental: return "Experimental";
    case Evidence::kBoth: return "Both";
  }
  return "?";
}

std::string limitation_catalog_csv() {
  std::ostringstream out;
  out << "index,name,category,evidence,modeled\n";
  for (const auto& e : limitation_catalog()) {
    // Names contain '/' and parentheses but never commas or quotes.
    out << e.index << ',' << e.name << ',' << to_string(e.category) << ','
        << to_string(e.evidence) << ',' << (e.modeled ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string_view to_string(WeatherKind k) {
  switch (k) {
    case WeatherKind::kClear: return "clear";
    case WeatherKind::kRain: return "rain";
    case WeatherKind::kFog: return "fog";
    case WeatherKind::kSnow: return "snow";
    case WeatherKind::kSpray: return "spray";
    case WeatherKind::kSunlight: return "sunlight";
    case WeatherKind::kDirtSectors: return "dirt";
  }
  return "?";
}

std::optional<WeatherKind> parse_weather_kind(std::string_view s) {
  for (auto k : {WeatherKind::kClear, WeatherKind::kRain, WeatherKind::kFog, WeatherKind::kSnow,
                 WeatherKind::kSpray, WeatherKind::kSunlight, WeatherKind::kDirtSectors})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::string_view to_string(Wavelength w) {
  return w == Wavelength::kNm905 ? "nm905" : "nm1550";
}

std::optional<Wavelength> parse_wavelength(std::string_view s) {
  if (s == "nm905" || s == "905") return Wavelength::kNm905;
  if (s == "nm1550" || s == "1550") return Wavelength::kNm1550;
  return std::nullopt;
}

void WeatherCondition::validate() const {
  auto fail = [](const std::string& what) { throw DataError("weather.intensity: " + what); };
  switch (kind) {
    case WeatherKind::kClear:
    case WeatherKind::kDirtSectors: break;
    case WeatherKind::kRain:
    case WeatherKind::kSnow:
      if (!(intensity >= 0) || !std::isfinite(intensity)) fail("rate must be >= 0");
      break;
    case WeatherKind::kFog:
      if (!(intensity > 0)) fail("visibility must be > 0");
      break;
    case WeatherKind::kSpray:
    case WeatherKind::kSunlight:
      if (!(intensity >= 0 && intensity <= 1)) fail("level must be in [0, 1]");
      break;
  }
  const double pi = std::numbers::pi;
  for (const auto& [lo, hi] : dirt_sectors) {
    if (!(lo >= -pi && lo < pi && hi >= -pi && hi < pi && lo <= hi))
      throw DataError("weather.sectors: intervals must satisfy -180 <= lo <= hi < 180 degrees");
  }
}

const WeatherModelConstants& default_weather_constants() {
  static const WeatherModelConstants k{};
  return k;
}

double extinction_coefficient(const WeatherCondition& cond, const WeatherModelConstants& k) {
  const double nm1550 = cond.wavelength == Wavelength::kNm1550 ? k.nm1550_rain_factor : 1.0;
  switch (cond.kind) {
    case WeatherKind::kFog: return k.koschmieder / cond.intensity;
    case WeatherKind::kRain: return nm1550 * k.k_rain * std::pow(cond.intensity, k.rain_exponent);
    case WeatherKind::kSnow: return k.k_snow * std::pow(cond.intensity, k.snow_exponent);
    case WeatherKind::kSpray: return nm1550 * k.k_spray * cond.intensity;
    default: return 0.0;
  }
}

double clutter_probability(const WeatherCondition& cond, const WeatherModelConstants& k) {
  double p = 0.0;
  switch (cond.kind) {
    case WeatherKind::kRain: p = k.c_rain * cond.intensity; break;
    case WeatherKind::kSnow: p = k.c_snow * cond.intensity; break;
    case WeatherKind::kSpray: p = k.c_spray * cond.intensity; break;
    case WeatherKind::kSunlight: p = k.c_sun * cond.intensity; break;
    default: break;
  }
  return std::min(k.max_clutter_probability, p);
}

double max_detection_range(const WeatherCondition& cond, double rho, bool surface_wet,
                           const WeatherModelConstants& k) {
  const double alpha = extinction_coefficient(cond, k);
  if (alpha <= 0) return std::numeric_limits<double>::infinity();
  const double rho_eff = surface_wet ? k.wet_reflectivity_factor * rho : rho;
  const double ratio = rho_eff / k.detection_threshold();
  if (ratio < 1.0) return 0.0;
  return std::log(ratio) / (2.0 * alpha);
}

namespace {

bool in_dirt_sector(const WeatherCondition& cond, double azimuth) {
  if (cond.kind != WeatherKind::kDirtSectors) return false;
  const double a = normalize_angle(azimuth);
  for (const auto& [lo, hi] : cond.dirt_sectors)
    if (a >= lo && a <= hi) return true;
  return false;
}

}  // namespace

PerturbedCloud apply_weather(const PointCloud& cloud, const Pose2D& pose,
                             const WeatherCondition& cond, const SensorSpec& spec,
                             const WorldModel& world, std::uint64_t seed,
                             const WeatherModelConstants& k) {
  PerturbedCloud out = cloud;
  const double alpha = extinction_coefficient(cond, k);
  const double p_clutter = clutter_probability(cond, k);
  const double sun_sigma =
      cond.kind == WeatherKind::kSunlight ? k.sun_noise_sigma * cond.intensity : 0.0;
  const auto frame = static_cast<std::uint64_t>(cloud.frame_id);
  const double upper = spec.max_range + 3.0 * spec.range_accuracy_sigma;

  for (std::size_t i = 0; i < out.beams.size(); ++i) {
    BeamReturn& beam = out.beams[i];
    const std::optional<double> original = beam.range;

    // Cover obstruction.
    if (in_dirt_sector(cond, beam.azimuth)) {
      beam.range.reset();
      beam.label = BeamLabel::kDropped;
      continue;
    }

    // Two-way attenuation against the reflectivity of the hit target.
    if (alpha > 0 && beam.range) {
      const double d = *beam.range;
      const Point2D hit = pose.position + d * beam_direction(pose, beam.azimuth);
      double rho = reflectivity_at(world, hit);
      if (world.surface_wet) rho *= k.wet_reflectivity_factor;
      if (rho * std::exp(-2.0 * alpha * d) < k.detection_threshold()) {
        beam.range.reset();
        beam.label = BeamLabel::kDropped;
      }
    }

    // Backscatter clutter.
    if (p_clutter > 0) {
      RngStream rng(seed, frame, i, RngStage::kClutter);
      if (rng.uniform() < p_clutter) {
        const double hi = std::max(
            spec.min_range, std::min(original.value_or(spec.max_range), k.r_clutter_max));
        beam.range = rng.uniform(spec.min_range, hi);
        beam.label = BeamLabel::kClutter;
        continue;
      }
    }

    // Receiver noise from ambient light.
    if (sun_sigma > 0 && beam.range && beam.label == BeamLabel::kGenuine) {
      RngStream rng(seed, frame, i, RngStage::kSunlightNoise);
      beam.range = std::clamp(*beam.range + rng.normal(0.0, sun_sigma), spec.min_range, upper);
    }
  }
  return out;
}

}  // namespace pgtbench
