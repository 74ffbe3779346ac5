#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vmirror {

/// mt19937_64 seeded from a key tuple, with platform-independent draws
/// (std distributions are implementation-defined).
class Rng {
 public:
  Rng(std::initializer_list<std::uint64_t> key);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer, used to mix key tuples into one seed.
std::uint64_t mix64(std::uint64_t x);

}  // namespace vmirror
