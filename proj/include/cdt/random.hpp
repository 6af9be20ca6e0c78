#pragma once

#include <cstdint>
#include <random>

namespace cdt {

inline constexpr std::uint64_t kDefaultSeed = 0x5eedc0ffeeULL;

// Deterministic sampler. Draws are built from raw 64-bit engine output so the
// stream is identical on every standard library.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  // Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  // Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);
  std::uint64_t next() { return engine_(); }
  // Uniform index in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cdt
