#ifndef PGTBENCH_WEATHER_HPP_
#define PGTBENCH_WEATHER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgtbench/core_types.hpp"
#include "pgtbench/sensor.hpp"
#include "pgtbench/world.hpp"

namespace pgtbench {

// ---------------------------------------------------------------------------
// Limitation catalog.

enum class LimitationCategory { kObstructing, kAttenuatingNoise, kOther };
enum class Evidence { kMention, kExperimental, kBoth };

struct LimitationEntry {
  int index = 0;
  std::string name;
  LimitationCategory category = LimitationCategory::kOther;
  Evidence evidence = Evidence::kMention;
  bool modeled = false;
};

/// The fourteen catalogued LiDAR limitations, ordered by index.
const std::vector<LimitationEntry>& limitation_catalog();

std::string_view to_string(LimitationCategory c);  // "Ob", "AN", "Ot"
std::string_view to_string(Evidence e);            // "Mention", "Experimental", "Both"

/// CSV: index,name,category,evidence,modeled.
std::string limitation_catalog_csv();

// ---------------------------------------------------------------------------
// Weather conditions.

enum class WeatherKind { kClear, kRain, kFog, kSnow, kSpray, kSunlight, kDirtSectors };
enum class Wavelength { kNm905, kNm1550 };

std::string_view to_string(WeatherKind k);
std::optional<WeatherKind> parse_weather_kind(std::string_view s);
std::string_view to_string(Wavelength w);
std::optional<Wavelength> parse_wavelength(std::string_view s);

/// `intensity` is the rate in mm/h for rain and snow, the visibility in
/// meters for fog, a level in [0,1] for spray and sunlight, and unused for
/// clear and dirt. Dirt sectors are sensor-frame azimuth intervals.
struct WeatherCondition {
  WeatherKind kind = WeatherKind::kClear;
  double intensity = 0.0;
  std::vector<std::pair<double, double>> dirt_sectors;
  Wavelength wavelength = Wavelength::kNm905;

  static WeatherCondition clear() { return {}; }
  static WeatherCondition rain(double mm_per_h) { return {WeatherKind::kRain, mm_per_h, {}, {}}; }
  static WeatherCondition fog(double visibility_m) {
    return {WeatherKind::kFog, visibility_m, {}, {}};
  }
  static WeatherCondition snow(double mm_per_h) { return {WeatherKind::kSnow, mm_per_h, {}, {}}; }
  static WeatherCondition spray(double level) { return {WeatherKind::kSpray, level, {}, {}}; }
  static WeatherCondition sunlight(double level) {
    return {WeatherKind::kSunlight, level, {}, {}};
  }
  static WeatherCondition dirt(std::vector<std::pair<double, double>> sectors) {
    return {WeatherKind::kDirtSectors, 0.0, std::move(sectors), {}};
  }

  void validate() const;
  bool operator==(const WeatherCondition&) const = default;
};

/// Magnitudes of the perturbation models. These are tunable defaults with the
/// right monotonic behaviour, not measured values; only the wet-surface factor
/// and the direction of the 1550 nm rain advantage have a literature basis.
struct WeatherModelConstants {
  double koschmieder = 3.912;       // fog: alpha = koschmieder / visibility
  double k_rain = 0.002;            // rain: alpha = k_rain * R^rain_exponent
  double rain_exponent = 0.6;
  double k_snow = 0.004;            // snow: alpha = k_snow * S^snow_exponent
  double snow_exponent = 0.7;
  double k_spray = 0.02;            // spray: alpha = k_spray * level
  double nm1550_rain_factor = 0.7;  // scales rain and spray alpha at 1550 nm
  double rho_min = 0.1;             // weakest detectable reflectivity in clear air
  double c_rain = 0.002;            // clutter probability per mm/h
  double c_snow = 0.008;            // clutter probability per mm/h
  double c_spray = 0.15;            // clutter probability per unit level
  double c_sun = 0.02;              // clutter probability per unit level
  double max_clutter_probability = 0.5;
  double r_clutter_max = 30.0;      // meters
  double sun_noise_sigma = 0.02;    // extra range noise per unit level, meters
  double wet_reflectivity_factor = 0.9;

  /// Detection threshold on rho * exp(-2 alpha d). With clear air as the
  /// reference, a target of reflectivity >= rho_min is always detected.
  double detection_threshold() const { return rho_min; }
};

const WeatherModelConstants& default_weather_constants();

/// Extinction coefficient alpha in 1/m.
double extinction_coefficient(const WeatherCondition& cond,
                              const WeatherModelConstants& k = default_weather_constants());

/// Per-beam probability of a spurious backscatter return.
double clutter_probability(const WeatherCondition& cond,
                           const WeatherModelConstants& k = default_weather_constants());

/// A wet surface reflects about 10 % less.
inline double wet_surface_reflectivity(double rho) { return 0.9 * rho; }

/// Largest range at which a target of reflectivity `rho` survives
/// attenuation under `cond` (infinity when alpha is 0).
double max_detection_range(const WeatherCondition& cond, double rho, bool surface_wet,
                           const WeatherModelConstants& k = default_weather_constants());

/// Applies the weather effects to a clean scan, in order: cover obstruction,
/// attenuation, clutter, sunlight noise. Beam count and azimuths are kept;
/// only ranges and labels change. `pose` places the cloud in the world so the
/// reflectivity of each hit target can be looked up.
PerturbedCloud apply_weather(const PointCloud& cloud, const Pose2D& pose,
                             const WeatherCondition& cond, const SensorSpec& spec,
                             const WorldModel& world, std::uint64_t seed,
                             const WeatherModelConstants& k = default_weather_constants());

}  // namespace pgtbench

#endif  // PGTBENCH_WEATHER_HPP_
