#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace qtzopt {

// Deterministic RNG used by every stochastic component. Wraps mt19937_64 but
// owns the variate transforms, so streams are reproducible across platforms
// and library versions (std::uniform_real_distribution et al. are
// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(scramble(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    // Lemire's multiply-shift with rejection for exact uniformity.
    std::uint64_t x = gen_();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        x = gen_();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Two distinct indices in [0, n), unordered. n must be >= 2.
  std::pair<std::size_t, std::size_t> distinct_pair(std::size_t n) {
    auto a = static_cast<std::size_t>(below(n));
    auto b = static_cast<std::size_t>(below(n - 1));
    if (b >= a) ++b;
    return {a, b};
  }

  // Standard normal via Box-Muller (no cached spare, keeps the stream
  // position a pure function of the call count).
  double gauss() {
    double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  static std::uint64_t scramble(std::uint64_t x) {
    // splitmix64 finalizer; decorrelates small consecutive seeds.
    x += 0x9E3779B97f4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 gen_;
};

}  // namespace qtzopt
