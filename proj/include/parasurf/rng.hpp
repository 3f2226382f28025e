#pragma once

#include <cstdint>
#include <random>

namespace parasurf {

/// Seeded uniform source with a platform-independent mapping to doubles
/// (std::uniform_real_distribution is implementation-defined).
class SeededUniform {
public:
  explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::uint64_t raw() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

} // namespace parasurf
