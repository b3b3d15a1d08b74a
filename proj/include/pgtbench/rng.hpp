#ifndef PGTBENCH_RNG_HPP_
#define PGTBENCH_RNG_HPP_

#include <cstdint>

namespace pgtbench {

/// Draw stages. Each stage of the pipeline that consumes randomness owns one
/// sub-stream per beam, so reordering stages in code never shifts draws.
enum class RngStage : std::uint64_t {
  kRangeNoise = 1,
  kClutter = 2,
  kSunlightNoise = 3,
};

/// SplitMix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based keyed stream, "SM64-KEYED":
///
///   key  = mix(mix(mix(mix(seed ^ K0) ^ frame) ^ beam) ^ stage)
///   x_i  = mix(key + (i + 1) * GAMMA)           i = 0, 1, 2, ...
///
/// with mix = SplitMix64 finalizer, K0 = 0x6A09E667F3BCC909 and
/// GAMMA = 0x9E3779B97F4A7C15. Uniform doubles take the top 53 bits of x_i.
/// Gaussians use Box-Muller on two consecutive uniforms. Only integer
/// arithmetic defines the stream, so it is identical on every platform;
/// Gaussian draws additionally depend on the libm log/cos/sin.
class RngStream {
 public:
  static constexpr std::uint64_t kKeySalt = 0x6A09E667F3BCC909ULL;
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr RngStream(std::uint64_t seed, std::uint64_t frame_id,
                      std::uint64_t beam_index, std::uint64_t stage)
      : key_(make_key(seed, frame_id, beam_index, stage)) {}

  RngStream(std::uint64_t seed, std::uint64_t frame_id, std::uint64_t beam_index,
            RngStage stage)
      : RngStream(seed, frame_id, beam_index, static_cast<std::uint64_t>(stage)) {}

  static constexpr std::uint64_t make_key(std::uint64_t seed, std::uint64_t frame_id,
                                          std::uint64_t beam_index, std::uint64_t stage) {
    std::uint64_t h = splitmix64_mix(seed ^ kKeySalt);
    h = splitmix64_mix(h ^ frame_id);
    h = splitmix64_mix(h ^ beam_index);
    return splitmix64_mix(h ^ stage);
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

  constexpr std::uint64_t next_u64() {
    ++counter_;
    return splitmix64_mix(key_ + counter_ * kGamma);
  }

  /// Uniform in [0, 1).
  constexpr double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller. Consumes two uniforms per call.
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace pgtbench

#endif  // PGTBENCH_RNG_HPP_
