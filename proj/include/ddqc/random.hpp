#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace ddqc {

using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates nearby seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept {
  return mix_seed(mix_seed(mix_seed(master) ^ stream) ^ index);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

/**
 * Exact sample from the discrete power law P(k) ~ k^-exponent, k >= 1
 * (Devroye's rejection method for the Zipf distribution). exponent > 1.
 */
inline std::uint64_t sample_zipf(Rng& rng, double exponent) {
  const double am1 = exponent - 1.0;
  const double b = std::pow(2.0, am1);
  constexpr double cap = 1e15;
  for (;;) {
    const double u = 1.0 - uniform01(rng);  // (0, 1]
    const double v = uniform01(rng);
    const double x = std::floor(std::pow(u, -1.0 / am1));
    if (!(x >= 1.0) || x > cap) continue;
    const double t = std::pow(1.0 + 1.0 / x, am1);
    if (v * x * (t - 1.0) / (b - 1.0) <= t / b) return static_cast<std::uint64_t>(x);
  }
}

}  // namespace ddqc
