#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "hbc/hypergraph.hpp"

namespace hbc {

/// Two planted clusters L = {0..n/2-1}, R = {n/2..n-1}; every r-subset inside
/// one cluster is an edge with probability p, every other r-subset with
/// probability q. All weights are 1.
struct ModelParams {
  std::size_t n = 0;
  std::size_t r = 3;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on odd n, r < 2, r > n, p > 0 with
  /// n/2 < r, or probabilities outside [0, 1].
  void validate() const;
};

struct SyntheticInstance {
  Hypergraph hypergraph;
  Bipartition truth;
};

/// Binomial-count sampler: draws the edge count of each stratum (intra-L,
/// intra-R, cross) exactly, then picks that many distinct r-subsets uniformly
/// within the stratum. Small strata are enumerated with one Bernoulli draw per
/// candidate instead.
SyntheticInstance generate(const ModelParams& params);

/// C(n, k) as a double (exact below 2^53).
double binomial_coefficient(std::size_t n, std::size_t k);

}  // namespace hbc
