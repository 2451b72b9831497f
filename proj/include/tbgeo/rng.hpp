// rng.hpp - deterministic, platform-independent random streams.
//
// Reports must be byte-identical across runs and across --jobs settings, so
// sampling cannot depend on std::mt19937 state shared between threads.  We use
// splitmix64 (public-domain constants; Steele et al.'s SplitMix) because it is
// tiny, fast, and trivially seedable per point: every sampled object derives
// from (seed, index) alone, never from "how many draws happened before me".
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace tbgeo {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1): 53 mantissa bits, exactly representable.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Standard normal via Box-Muller.  Deterministic given the stream position.
  double next_gauss() {
    double u1 = next_unit();
    double u2 = next_unit();
    if (u1 <= 0.0) u1 = 0x1.0p-53;  // avoid log(0)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::vector<double> next_gauss_vec(int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = next_gauss();
    return v;
  }

  // Derive an independent stream for sub-object `index` of a run seeded with
  // `seed`.  Used for per-point sampling so that point k's data is a function
  // of (seed, k) only -- the key to order-independent parallel runs.
  static SplitMix64 for_index(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    mix.next_u64();  // decorrelate nearby seeds
    return mix;
  }

 private:
  std::uint64_t state_;
};

}  // namespace tbgeo
