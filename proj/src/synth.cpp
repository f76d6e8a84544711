#include "hbc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "hbc/rng.hpp"

namespace hbc {

namespace {

// Strata at most this large are enumerated candidate by candidate.
constexpr double kEnumerationLimit = 2e5;

using Subset = std::vector<VertexId>;

// Uniform k-subset of {lo, ..., lo + size - 1} (Floyd's algorithm), sorted.
Subset floyd_subset(Rng& rng, VertexId lo, std::size_t size, std::size_t k) {
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = size - k; j < size; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  Subset out;
  out.reserve(k);
  for (auto x : chosen) out.push_back(static_cast<VertexId>(lo + x));
  return out;
}

// Visits every k-subset of {lo, ..., lo + size - 1} in lexicographic order.
template <typename Visit>
void for_each_subset(VertexId lo, std::size_t size, std::size_t k, Visit visit) {
  if (k > size) return;
  Subset s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = static_cast<VertexId>(lo + i);
  const VertexId end = static_cast<VertexId>(lo + size);
  while (true) {
    visit(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == end - (k - i) - 1) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

}  // namespace

double binomial_coefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

void ModelParams::validate() const {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("model: n must be even and >= 2");
  if (r < 2 || r > n) throw std::invalid_argument("model: need 2 <= r <= n");
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("model: probabilities must lie in [0, 1]");
  }
  if (p > 0.0 && n / 2 < r) {
    throw std::invalid_argument("model: p > 0 needs clusters of at least r vertices");
  }
}

SyntheticInstance generate(const ModelParams& params) {
  params.validate();
  const std::size_t n = params.n, r = params.r, half = n / 2;
  Rng rng(params.seed);
  std::vector<Subset> edges;

  const double intra = binomial_coefficient(half, r);
  const double cross = binomial_coefficient(n, r) - 2.0 * intra;

  auto inside_one = [&](const Subset& s) { return s.back() < half || s.front() >= half; };

  // Intra-cluster strata.
  for (VertexId lo : {VertexId{0}, static_cast<VertexId>(half)}) {
    if (params.p == 0.0 || intra == 0.0) continue;
    if (intra <= kEnumerationLimit) {
      for_each_subset(lo, half, r, [&](const Subset& s) {
        if (rng.uniform() < params.p) edges.push_back(s);
      });
      continue;
    }
    const auto count = rng.binomial(static_cast<std::uint64_t>(intra), params.p);
    std::set<Subset> seen;
    while (seen.size() < count) {
      Subset s = floyd_subset(rng, lo, half, r);
      if (seen.insert(s).second) edges.push_back(std::move(s));
    }
  }

  // Cross stratum.
  if (params.q > 0.0 && cross > 0.0) {
    if (cross <= kEnumerationLimit) {
      for_each_subset(0, n, r, [&](const Subset& s) {
        if (!inside_one(s) && rng.uniform() < params.q) edges.push_back(s);
      });
    } else {
      const auto count = rng.binomial(static_cast<std::uint64_t>(cross), params.q);
      std::set<Subset> seen;
      while (seen.size() < count) {
        Subset s = floyd_subset(rng, 0, n, r);
        if (inside_one(s)) continue;
        if (seen.insert(s).second) edges.push_back(std::move(s));
      }
    }
  }

  std::sort(edges.begin(), edges.end());
  std::vector<Hypergraph::Edge> list;
  list.reserve(edges.size());
  for (auto& s : edges) list.push_back({std::move(s), 1.0});

  SyntheticInstance out{Hypergraph(n, list), {}};
  for (VertexId v = 0; v < n; ++v) (v < half ? out.truth.left : out.truth.right).push_back(v);
  return out;
}

}  // namespace hbc
