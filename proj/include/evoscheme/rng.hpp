#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace evoscheme {

// Deterministic random stream. mt19937_64 is fully specified by the standard,
// and all variate mappings below are hand-rolled (std::*_distribution is not
// portable across standard libraries), so a seed produces the same stream on
// every platform. Treat the mappings as frozen: changing them changes every
// seeded run.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + uniform01() * (hi - lo);
  }

  /// Uniform index in {0, ..., n-1}, unbiased via rejection.
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  /// Cauchy variate, location 0, half-width gamma (inverse CDF; no resampling).
  double cauchy(double gamma) {
    return std::tan(std::numbers::pi * (uniform01() - 0.5)) * gamma;
  }

private:
  std::mt19937_64 gen_;
};

} // namespace evoscheme
