#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hbc/hypergraph.hpp"
#include "support.hpp"

using namespace hbc;
using hbc::testing::make;

TEST_CASE("degree sums incident weights") {
  auto h = make(4, {{{0, 1, 2}, 1.0}});
  CHECK(degree(h, 0) == 1.0);
  CHECK(degree(h, 3) == 0.0);
  auto g = make(4, {{{0, 1}, 2.0}, {{0, 2, 3}, 3.0}});
  CHECK(degree(g, 0) == 5.0);
  CHECK_THROWS_AS(degree(g, 4), std::out_of_range);
  CHECK(g.degrees_consistent());
  CHECK(g.total_volume() == doctest::Approx(2 + 2 + 3 * 3));
}

TEST_CASE("construction rejects malformed edges") {
  using E = Hypergraph::Edge;
  CHECK_THROWS_AS(make(3, {E{{0}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make(3, {E{{0, 3}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make(3, {E{{0, 0}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make(3, {E{{0, 1}, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make(3, {E{{0, 1}, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make(3, {E{{0, 1}, NAN}}), std::invalid_argument);
}

TEST_CASE("duplicate edges stay distinct") {
  auto h = make(2, {{{0, 1}, 1.0}, {{1, 0}, 2.0}});
  CHECK(h.num_edges() == 2);
  CHECK(degree(h, 0) == 3.0);
}

TEST_CASE("cut weight") {
  auto h = make(3, {{{0, 1, 2}, 1.0}});
  const VertexSet a{0}, b{2}, c{1};
  CHECK(cut_weight(h, a, b) == 1.0);
  CHECK(cut_weight(h, a, b, c) == 0.0);

  auto g = make(4, {{{0, 1}, 1.0}, {{0, 2}, 1.0}, {{2, 3}, 1.0}});
  const VertexSet x{0}, y{1, 3}, z{2};
  CHECK(cut_weight(g, x, y, z) == 1.0);
  CHECK(cut_weight(g, x, y) == cut_weight(g, y, x));
}

TEST_CASE("beta_hyper examples") {
  auto h = make(4, {{{0, 1}, 1.0}, {{0, 2}, 1.0}, {{2, 3}, 1.0}});
  CHECK(beta_hyper(h, {{0}, {2}}) == doctest::Approx(0.5));
  auto one = make(3, {{{0, 1, 2}, 1.0}});
  CHECK(beta_hyper(one, {{0}, {1}}) == 0.0);
  auto bip = make(4, {{{0, 1, 2}, 1.0}, {{1, 3}, 2.0}, {{0, 2, 3}, 1.0}});
  CHECK(beta_hyper(bip, {{0, 3}, {1, 2}}) == 0.0);
  auto lonely = make(3, {{{0, 1}, 1.0}});
  CHECK_THROWS_AS(beta_hyper(lonely, {{2}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(beta_hyper(h, {{0, 1}, {1}}), std::invalid_argument);
}

TEST_CASE("beta_hyper matches the cut-term definition and is swap invariant") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto h = testing::random_hypergraph(9, 14, 4, seed);
    Rng rng(seed * 77);
    Bipartition part;
    for (VertexId v = 0; v < 9; ++v) {
      const auto s = rng.below(3);
      if (s == 1) part.left.push_back(v);
      if (s == 2) part.right.push_back(v);
    }
    if (volume(h, part.left) + volume(h, part.right) == 0.0) continue;
    const double b = beta_hyper(h, part);
    CHECK(b == doctest::Approx(testing::beta_by_definition(h, part)).epsilon(1e-12));
    CHECK(b == doctest::Approx(beta_hyper(h, {part.right, part.left})).epsilon(1e-12));
  }
}

TEST_CASE("beta_hyper is zero exactly for perfect two-sided colourings") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto h = testing::random_hypergraph(8, 6, 3, seed);
    for (unsigned mask = 1; mask < 6561; mask += 7) {
      Bipartition part;
      unsigned m = mask;
      for (VertexId v = 0; v < 8; ++v, m /= 3) {
        if (m % 3 == 1) part.left.push_back(v);
        if (m % 3 == 2) part.right.push_back(v);
      }
      if (volume(h, part.left) + volume(h, part.right) == 0.0) continue;
      std::vector<int> side(8, 0);
      for (VertexId v : part.left) side[v] = 1;
      for (VertexId v : part.right) side[v] = 2;
      bool perfect = true;
      for (EdgeId e = 0; e < h.num_edges(); ++e) {
        bool l = false, r = false;
        for (VertexId v : h.edge(e)) {
          l |= side[v] == 1;
          r |= side[v] == 2;
        }
        if ((l || r) && !(l && r)) perfect = false;
      }
      CHECK((beta_hyper(h, part) == 0.0) == perfect);
    }
  }
}

TEST_CASE("discrepancy and weighted discrepancy") {
  const VertexSet e{0, 1, 2};
  const VertexVector f{1, 1, -2};
  CHECK(discrepancy(e, f) == -1.0);
  CHECK(discrepancy(e, VertexVector{4, 4, 4}) == 8.0);
  CHECK(discrepancy(VertexSet{0, 1}, VertexVector{3, -3}) == 0.0);

  auto h = make(4, {{{0, 1}, 1.0}, {{2, 3}, 3.0}});
  const VertexVector g{0, -1, 1, 1};
  CHECK(weighted_discrepancy(h, 0, g) == 1.0);
  CHECK(weighted_discrepancy(h, 1, g) == 6.0);
  const std::vector<EdgeId> both{0, 1};
  CHECK(weighted_discrepancy(h, both, g) == 7.0);
}

TEST_CASE("discrepancy ratio and inner products") {
  auto h = make(3, {{{0, 1, 2}, 1.0}});
  const VertexVector f{1, 1, -2};
  CHECK(discrepancy_ratio(h, f) == doctest::Approx(1.0 / 6.0));
  CHECK(weighted_norm_sq(h, f) == 6.0);
  VertexVector g = f;
  for (auto& x : g) x *= -3.5;
  CHECK(discrepancy_ratio(h, g) == doctest::Approx(1.0 / 6.0));
  CHECK(weighted_inner(h, VertexVector{1, 0, 0}, VertexVector{0, 1, 1}) == 0.0);
  CHECK(weighted_inner(h, VertexVector{1, 1, 1}, VertexVector{1, 1, 1}) == h.total_volume());
  CHECK_THROWS_AS(discrepancy_ratio(h, VertexVector{0, 0, 0}), std::invalid_argument);

  auto bip = make(4, {{{0, 1, 2}, 1.0}, {{1, 3}, 2.0}});
  CHECK(discrepancy_ratio(bip, indicator(4, {{0, 3}, {1, 2}})) == 0.0);
}

TEST_CASE("discrepancy is bounded by twice the sup norm") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto h = testing::random_hypergraph(10, 20, 5, seed);
    auto f = testing::random_vector(10, seed + 100);
    double sup = 0;
    for (double x : f) sup = std::max(sup, std::abs(x));
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      CHECK(std::abs(discrepancy(h.edge(e), f)) <= 2 * sup);
    }
  }
}
