#pragma once

#include <cstdint>

namespace tda {

/// Counter-based generator: stream i of seed s is splitmix64 over the
/// counter sequence, so parallel and serial runs agree.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1).
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace tda
