#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "hbc/synth.hpp"

using namespace hbc;

namespace {

struct Counts {
  std::size_t intra = 0;
  std::size_t cross = 0;
};

Counts count_strata(const SyntheticInstance& inst, std::size_t n) {
  Counts c;
  for (EdgeId e = 0; e < inst.hypergraph.num_edges(); ++e) {
    const auto vs = inst.hypergraph.edge(e);
    std::size_t in_left = 0;
    for (VertexId v : vs) in_left += v < n / 2;
    (in_left == 0 || in_left == vs.size() ? c.intra : c.cross)++;
  }
  return c;
}

void check_within_4_sigma(const ModelParams& base, int seeds) {
  const double N = 2.0 * binomial_coefficient(base.n / 2, base.r);
  const double M = binomial_coefficient(base.n, base.r) - N;
  const double mean = N * base.p + M * base.q;
  const double sigma = std::sqrt(N * base.p * (1 - base.p) + M * base.q * (1 - base.q));
  double total = 0.0;
  for (int s = 0; s < seeds; ++s) {
    ModelParams p = base;
    p.seed = static_cast<std::uint64_t>(s);
    const double m = static_cast<double>(generate(p).hypergraph.num_edges());
    CHECK(std::abs(m - mean) <= 4.0 * sigma);
    total += m;
  }
  // The average over seeds is tighter by sqrt(seeds).
  CHECK(std::abs(total / seeds - mean) <= 4.0 * sigma / std::sqrt(static_cast<double>(seeds)));
}

}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binomial_coefficient(5, 2) == 10.0);
  CHECK(binomial_coefficient(100, 3) == 161700.0);
  CHECK(binomial_coefficient(200, 3) == 1313400.0);
  CHECK(binomial_coefficient(3, 5) == 0.0);
  CHECK(binomial_coefficient(7, 0) == 1.0);
  CHECK(binomial_coefficient(2000, 5) == 265335665000400.0);
}

TEST_CASE("zero probabilities give no edges") {
  const auto inst = generate({10, 3, 0.0, 0.0, 1});
  CHECK(inst.hypergraph.num_edges() == 0);
  CHECK(inst.hypergraph.num_vertices() == 10);
  CHECK(inst.truth.left == VertexSet{0, 1, 2, 3, 4});
  CHECK(inst.truth.right == VertexSet{5, 6, 7, 8, 9});
}

TEST_CASE("p = 1, q = 0 on six vertices gives the two cluster triangles") {
  const auto inst = generate({6, 3, 1.0, 0.0, 4});
  REQUIRE(inst.hypergraph.num_edges() == 2);
  const auto e0 = inst.hypergraph.edge(0), e1 = inst.hypergraph.edge(1);
  CHECK(std::vector<VertexId>(e0.begin(), e0.end()) == std::vector<VertexId>{0, 1, 2});
  CHECK(std::vector<VertexId>(e1.begin(), e1.end()) == std::vector<VertexId>{3, 4, 5});
}

TEST_CASE("q = 1 gives every straddling subset") {
  const auto inst = generate({8, 2, 0.0, 1.0, 2});
  CHECK(inst.hypergraph.num_edges() == 16);
  CHECK(count_strata(inst, 8).intra == 0);
}

TEST_CASE("edge counts stay within 4 sigma of the expectation") {
  SUBCASE("n = 200, q = 2p") { check_within_4_sigma({200, 3, 1e-4, 2e-4, 0}, 20); }
  SUBCASE("n = 200, q = 6p") { check_within_4_sigma({200, 3, 1e-4, 6e-4, 0}, 20); }
  SUBCASE("small enumerated strata") { check_within_4_sigma({20, 3, 0.3, 0.05, 0}, 20); }
  SUBCASE("rank 5, sampled strata") { check_within_4_sigma({60, 5, 2e-4, 1e-4, 0}, 20); }
}

TEST_CASE("n = 200 grid instances have a few hundred edges") {
  const auto lo = generate({200, 3, 1e-4, 2e-4, 3}).hypergraph.num_edges();
  const auto hi = generate({200, 3, 1e-4, 6e-4, 3}).hypergraph.num_edges();
  CHECK(lo > 150);
  CHECK(lo < 330);
  CHECK(hi > 480);
  CHECK(hi < 760);
}

TEST_CASE("generated edges are valid and distinct, strata respected") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::size_t n = 60;
    const auto inst = generate({n, 4, 0.01, 0.0, seed});
    std::set<std::vector<VertexId>> seen;
    for (EdgeId e = 0; e < inst.hypergraph.num_edges(); ++e) {
      const auto vs = inst.hypergraph.edge(e);
      CHECK(vs.size() == 4);
      CHECK(inst.hypergraph.weight(e) == 1.0);
      CHECK(std::is_sorted(vs.begin(), vs.end()));
      CHECK(seen.insert({vs.begin(), vs.end()}).second);
    }
    // q = 0: nothing may straddle.
    CHECK(count_strata(inst, n).cross == 0);

    const auto cross_only = generate({n, 4, 0.0, 1e-3, seed});
    CHECK(count_strata(cross_only, n).intra == 0);
  }
}

TEST_CASE("same seed, same hypergraph") {
  const ModelParams p{200, 3, 1e-4, 4e-4, 42};
  const auto a = generate(p), b = generate(p);
  REQUIRE(a.hypergraph.num_edges() == b.hypergraph.num_edges());
  for (EdgeId e = 0; e < a.hypergraph.num_edges(); ++e) {
    const auto x = a.hypergraph.edge(e), y = b.hypergraph.edge(e);
    CHECK(std::equal(x.begin(), x.end(), y.begin(), y.end()));
  }
  ModelParams q = p;
  q.seed = 43;
  CHECK(generate(q).hypergraph.edge_list().size() != 0);
}

TEST_CASE("large sparse configuration is generated without enumeration") {
  const auto inst = generate({2000, 5, 1e-11, 2e-11, 0});
  const double N = 2.0 * binomial_coefficient(1000, 5);
  const double M = binomial_coefficient(2000, 5) - N;
  const double mean = N * 1e-11 + M * 2e-11;
  CHECK(std::abs(inst.hypergraph.num_edges() - mean) <= 4.0 * std::sqrt(mean));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(generate({7, 3, 0.1, 0.1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate({10, 1, 0.1, 0.1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate({10, 11, 0.0, 0.1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate({6, 4, 0.1, 0.1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate({10, 3, -0.1, 0.1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate({10, 3, 0.1, 1.5, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate({10, 3, NAN, 0.1, 0}), std::invalid_argument);
  // Intra edges impossible but not requested: allowed.
  CHECK_NOTHROW(generate({6, 4, 0.0, 0.1, 0}));
}
