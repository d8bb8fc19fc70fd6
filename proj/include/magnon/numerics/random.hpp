#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace magnon::numerics {

/// SplitMix64 finalizer applied to master + (index + 1) * golden gamma.
/// Used to derive independent per-task seeds from one master seed.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic standard-normal stream.
///
/// Seed -> stream mapping: std::mt19937_64 seeded with the 64-bit seed
/// (bit-exact across conforming standard libraries), uniforms formed from the
/// top 53 bits, and Box-Muller pairs emitted cosine branch first.
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline GaussianStream gaussian_rng(std::uint64_t seed) { return GaussianStream(seed); }

} // namespace magnon::numerics
