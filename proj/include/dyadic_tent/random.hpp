#pragma once

#include <cstdint>
#include <random>

namespace dyadic_tent {

/// Seeded generator whose draws are identical on every platform: the standard
/// distributions are implementation-defined, so conversions are done by hand.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Independent stream for a sub-task, derived deterministically.
  Rng fork(std::uint64_t salt) { return Rng(engine_() ^ (salt * 0x9E3779B97F4A7C15ull)); }

private:
  std::mt19937_64 engine_;
};

}  // namespace dyadic_tent
