#pragma once

#include <cmath>
#include <cstdint>

namespace demograph {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based generator: every value is a pure function of
// (seed, stream, draw index), so per-entity substreams reproduce
// bit-identically regardless of thread schedule or draw interleaving
// between entities. Samplers are hand-rolled because the std::*
// distributions are implementation-defined and would break cross-platform
// reproducibility of the synthetic datasets.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : state_(splitmix64(seed) ^ splitmix64(stream * 0x9e3779b97f4a7c15ull + 1)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Uniform in [0, n). Lemire multiply-shift; slight bias is irrelevant at
  // the sample sizes involved and keeps the draw count fixed at one.
  std::uint64_t uniform_int(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  double exponential(double mean) {
    return -mean * std::log1p(-uniform01());
  }

  double normal() {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  // Knuth product method below 30, normal approximation above. The synth
  // rates stay well under the crossover in practice.
  std::uint64_t poisson(double mean) {
    if (mean <= 0) return 0;
    if (mean < 30.0) {
      const double limit = std::exp(-mean);
      double prod = 1.0;
      std::uint64_t k = 0;
      do {
        prod *= uniform01();
        ++k;
      } while (prod > limit);
      return k - 1;
    }
    const double v = mean + std::sqrt(mean) * normal() + 0.5;
    return v <= 0 ? 0 : static_cast<std::uint64_t>(v);
  }

 private:
  std::uint64_t state_;
};

}  // namespace demograph
