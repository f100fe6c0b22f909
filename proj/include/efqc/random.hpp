#pragma once

#include <cstdint>
#include <random>

namespace efqc {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// A single random stream. Owned by exactly one trial at a time.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits; bit-exact across platforms.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives independent per-trial substreams from one master seed. The
/// substream for a trial depends only on (master_seed, trial_index), so trials
/// may run in any order or on any worker.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t master_seed) : master_seed_(master_seed) {}

  std::uint64_t master_seed() const noexcept { return master_seed_; }

  Rng substream(std::uint64_t trial_index) const {
    return Rng(mix64(master_seed_ ^ mix64(trial_index)));
  }

 private:
  std::uint64_t master_seed_;
};

}  // namespace efqc
