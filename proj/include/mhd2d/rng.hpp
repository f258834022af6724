#pragma once

#include <cstdint>
#include <random>

namespace mhd2d {

/// Deterministic per-mode random streams: a seed is mixed with integer tags
/// (wave indices, component, sample index) so the draw for a given mode is
/// independent of grid size and iteration order.
class ModeRng {
 public:
  ModeRng(uint64_t seed, int64_t tag1 = 0, int64_t tag2 = 0, int64_t tag3 = 0) {
    uint64_t x = seed;
    x = mix(x ^ (0x9e3779b97f4a7c15ull + static_cast<uint64_t>(tag1)));
    x = mix(x ^ (0xbf58476d1ce4e5b9ull + static_cast<uint64_t>(tag2)));
    x = mix(x ^ (0x94d049bb133111ebull + static_cast<uint64_t>(tag3)));
    engine_.seed(x);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via explicit Box-Muller (no library-dependent distributions).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mhd2d
