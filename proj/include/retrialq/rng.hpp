#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace retrialq {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// One independently seeded random stream. Uniform/exponential/geometric
/// draws are inverted by hand from the raw 64-bit output so results are
/// bit-stable across standard library implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  /// Geometric on {1, 2, ...} with P{J = k} = (1 - q) q^{k-1}.
  std::uint64_t geometric_from_one(double q) {
    if (q <= 0.0) return 1;
    const double g = std::floor(std::log(uniform()) / std::log(q));
    return 1 + static_cast<std::uint64_t>(g);
  }

  std::uint64_t poisson(double mean) {
    std::poisson_distribution<std::uint64_t> d(mean);
    return d(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace retrialq
