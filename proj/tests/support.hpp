#pragma once

// Small fixtures and brute-force oracles shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hbc/hypergraph.hpp"
#include "hbc/rng.hpp"

namespace hbc::testing {

inline Hypergraph make(std::size_t n, std::vector<Hypergraph::Edge> edges) {
  return Hypergraph(n, edges);
}

/// Random hypergraph with ranks in [2, max_rank] and weights in {1, 2, 3} or 1.
inline Hypergraph random_hypergraph(std::size_t n, std::size_t m, std::size_t max_rank,
                                    std::uint64_t seed, bool unit_weights = false,
                                    std::size_t min_rank = 2) {
  Rng rng(seed);
  std::vector<Hypergraph::Edge> edges;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t r = min_rank + rng.below(std::min(max_rank, n) - min_rank + 1);
    std::vector<VertexId> vs;
    while (vs.size() < r) {
      const auto v = static_cast<VertexId>(rng.below(n));
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    std::sort(vs.begin(), vs.end());
    edges.push_back({vs, unit_weights ? 1.0 : 1.0 + static_cast<double>(rng.below(3))});
  }
  return Hypergraph(n, edges);
}

/// Each vertex connected: adds a rank-2 edge for any isolated vertex.
inline Hypergraph random_connected_hypergraph(std::size_t n, std::size_t m,
                                              std::size_t max_rank, std::uint64_t seed,
                                              bool unit_weights = false) {
  Hypergraph h = random_hypergraph(n, m, max_rank, seed, unit_weights);
  auto edges = h.edge_list();
  for (VertexId v = 0; v < n; ++v) {
    if (h.degree_unchecked(v) == 0.0) edges.push_back({{v, static_cast<VertexId>((v + 1) % n)}, 1.0});
  }
  for (auto& e : edges) std::sort(e.vertices.begin(), e.vertices.end());
  return Hypergraph(n, edges);
}

/// f with many ties: values drawn from a small integer pool.
inline VertexVector tied_vector(std::size_t n, int levels, std::uint64_t seed) {
  Rng rng(seed);
  VertexVector f(n);
  for (auto& x : f) x = static_cast<double>(static_cast<int>(rng.below(2 * levels + 1)) - levels);
  return f;
}

inline VertexVector random_vector(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  VertexVector f(n);
  for (auto& x : f) x = 2.0 * rng.uniform() - 1.0;
  return f;
}

/// Definition-level beta: the four cut terms, each edge tested directly.
inline double beta_by_definition(const Hypergraph& h, const Bipartition& part) {
  std::vector<int> side(h.num_vertices(), 0);
  for (VertexId v : part.left) side[v] = 1;
  for (VertexId v : part.right) side[v] = 2;
  double in_l = 0, in_r = 0, l_out = 0, r_out = 0, vol = 0;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (side[v]) vol += h.degree_unchecked(v);
  }
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    bool l = false, r = false, o = false;
    for (VertexId v : h.edge(e)) {
      l |= side[v] == 1;
      r |= side[v] == 2;
      o |= side[v] == 0;
    }
    const double w = h.weight(e);
    // w(L|Lbar): edge meets L and avoids everything outside L.
    if (l && !r && !o) in_l += w;
    if (r && !l && !o) in_r += w;
    if (l && o && !r) l_out += w;
    if (r && o && !l) r_out += w;
  }
  return (2 * in_l + 2 * in_r + l_out + r_out) / vol;
}

// Two 6-cliques {0..5} and {6..11} joined by four rank-3 edges, all degrees
// 6. Every rank-3 edge has one "lone" vertex at +1 and a pair at {-1, 0}.
struct TwoCliques {
  Hypergraph h;
  VertexVector f;
};

inline TwoCliques two_cliques(unsigned choice) {
  std::vector<Hypergraph::Edge> edges;
  for (VertexId base : {0u, 6u}) {
    for (VertexId a = 0; a < 6; ++a) {
      for (VertexId b = a + 1; b < 6; ++b) edges.push_back({{base + a, base + b}, 1.0});
    }
  }
  struct Triple {
    VertexId lone, p, q;
  };
  const Triple triples[] = {{0, 6, 7}, {1, 8, 9}, {10, 2, 3}, {11, 4, 5}};
  VertexVector f(12, 0.0);
  for (unsigned k = 0; k < 4; ++k) {
    const auto& t = triples[k];
    std::vector<VertexId> vs{t.lone, t.p, t.q};
    std::sort(vs.begin(), vs.end());
    edges.push_back({vs, 1.0});
    f[t.lone] = 1.0;
    const bool flip = (choice >> k) & 1;
    f[flip ? t.q : t.p] = -1.0;
    f[flip ? t.p : t.q] = 0.0;
  }
  return {Hypergraph(12, edges), f};
}

}  // namespace hbc::testing
