#include <doctest.h>

#include <cmath>

#include "hbc/reductions.hpp"
#include "support.hpp"

using namespace hbc;
using hbc::testing::make;

TEST_CASE("clique reduction weights") {
  auto g = clique_reduce(make(3, {{{0, 1, 2}, 1.0}}));
  CHECK(g.weight(0, 1) == 0.5);
  CHECK(g.weight(1, 2) == 0.5);
  CHECK(g.weight(0, 2) == 0.5);
  for (VertexId v = 0; v < 3; ++v) CHECK(g.degree(v) == 1.0);

  auto pair = clique_reduce(make(2, {{{0, 1}, 3.0}}));
  CHECK(pair.weight(0, 1) == 3.0);

  auto two = clique_reduce(make(4, {{{0, 1, 2}, 1.0}, {{1, 2, 3}, 1.0}}));
  CHECK(two.weight(1, 2) == 1.0);
  CHECK(two.weight(0, 3) == 0.0);
}

TEST_CASE("clique reduction preserves degrees and volume") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto h = testing::random_hypergraph(30, 60, 7, seed);
    auto g = clique_reduce(h);
    for (VertexId v = 0; v < 30; ++v) {
      CHECK(g.degree(v) == doctest::Approx(h.degree_unchecked(v)).epsilon(1e-13));
    }
    CHECK(g.total_volume() == doctest::Approx(h.total_volume()).epsilon(1e-13));
  }
}

TEST_CASE("random reduction is seeded and keeps rank-2 edges") {
  auto h = testing::random_hypergraph(20, 40, 5, 3);
  auto a = random_reduce(h, 11), b = random_reduce(h, 11);
  for (VertexId u = 0; u < 20; ++u) {
    for (VertexId v = 0; v < 20; ++v) CHECK(a.weight(u, v) == b.weight(u, v));
  }
  CHECK(a.total_volume() == doctest::Approx(2 * [&] {
          double s = 0;
          for (double w : h.weights()) s += w;
          return s;
        }()));
  auto pair = random_reduce(make(2, {{{0, 1}, 2.0}}), 5);
  CHECK(pair.weight(0, 1) == 2.0);
}

namespace {

// Fraction of edges that land across (L, R) when the first `left` vertices of
// each rank-r edge are in L and the rest in R.
double crossing_rate(std::size_t r, std::size_t left, std::size_t trials) {
  std::vector<Hypergraph::Edge> edges;
  std::vector<VertexId> vs(r);
  for (VertexId i = 0; i < r; ++i) vs[i] = i;
  edges.push_back({vs, 1.0});
  auto h = make(r, edges);
  std::size_t crossing = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto g = random_reduce(h, 1000 + t);
    for (VertexId u = 0; u < left; ++u) {
      for (VertexId v = left; v < r; ++v) crossing += g.weight(u, v) > 0 ? 1 : 0;
    }
  }
  return static_cast<double>(crossing) / static_cast<double>(trials);
}

void check_rate(double got, double p, std::size_t trials) {
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  CHECK(std::abs(got - p) <= 3 * sigma);
}

}  // namespace

TEST_CASE("random reduction crossing probabilities") {
  const std::size_t trials = 10000;
  for (std::size_t r : {3, 4, 6, 8}) {
    // One vertex against r - 1.
    check_rate(crossing_rate(r, 1, trials), 2.0 / static_cast<double>(r), trials);
    // Even split.
    const double half = static_cast<double>(r / 2);
    const double pairs = static_cast<double>(r * (r - 1) / 2);
    if (r % 2 == 0) check_rate(crossing_rate(r, r / 2, trials), half * half / pairs, trials);
  }
}

TEST_CASE("clique eigenvector has a smaller hypergraph Rayleigh quotient when ranks exceed two") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto h3 = testing::random_hypergraph(40, 120, 5, seed, false, 3);
    bool isolated = false;
    for (VertexId v = 0; v < 40; ++v) isolated |= h3.degree_unchecked(v) == 0.0;
    REQUIRE_FALSE(isolated);
    const auto pair = min_eigenpair(clique_reduce(h3));
    CHECK(discrepancy_ratio(h3, pair.scaled) < pair.value);
  }
}
