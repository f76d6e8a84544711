#pragma once

#include <cstdint>

namespace hbc {

/// SplitMix64: a 64-bit counter-based generator. Output k is a fixed mixing
/// function of seed + k * golden_gamma, so streams are reproducible on every
/// platform. All derived draws below avoid <random> distributions, whose
/// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

  /// Uniform integer in [0, bound), unbiased (Lemire's method).
  std::uint64_t below(std::uint64_t bound);

  /// Number of successes in `trials` independent Bernoulli(p) trials, drawn
  /// by geometric skipping: O(trials * p) work.
  std::uint64_t binomial(std::uint64_t trials, double p);

 private:
  std::uint64_t state_;
};

}  // namespace hbc
