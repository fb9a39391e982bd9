#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace pblock {

// splitmix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return mix64(seed ^ mix64(value));
}

/// Derives an independent sub-seed for a named stream (e.g. "projection", "sampling").
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed * 0xd1342543de82ef95ULL + stream);
}

/// Top 53 bits as a double in [0, 1).
inline double unit_interval(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

__extension__ using uint128 = unsigned __int128;

/// Maps a uniform 64-bit value into [0, range) by multiply-high.
inline std::uint64_t scale_to_range(std::uint64_t h, std::uint64_t range) {
  return static_cast<std::uint64_t>((static_cast<uint128>(h) * range) >> 64);
}

/// Standard normal from two hashed words (Box-Muller).
inline double gaussian_from(std::uint64_t h1, std::uint64_t h2) {
  const double u1 = 1.0 - unit_interval(h1);  // (0, 1]
  const double u2 = unit_interval(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Seeded generator with platform-independent draws. std::mt19937_64 output is
/// fixed by the standard, the std distributions are not, so they are avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform() { return unit_interval(engine_()); }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return scale_to_range(engine_(), n); }
  double gaussian() {
    const auto a = engine_();
    return gaussian_from(a, engine_());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pblock
