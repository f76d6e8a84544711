#include "hbc/reductions.hpp"

#include "hbc/rng.hpp"

namespace hbc {

Graph clique_reduce(const Hypergraph& h) {
  std::vector<std::tuple<VertexId, VertexId, double>> edges;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    auto vs = h.edge(e);
    const double w = h.weight(e) / static_cast<double>(vs.size() - 1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) edges.emplace_back(vs[i], vs[j], w);
    }
  }
  return Graph(h.num_vertices(), edges);
}

Graph random_reduce(const Hypergraph& h, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::tuple<VertexId, VertexId, double>> edges;
  edges.reserve(h.num_edges());
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    auto vs = h.edge(e);
    const auto r = static_cast<std::uint64_t>(vs.size());
    const auto i = rng.below(r);
    auto j = rng.below(r - 1);
    if (j >= i) ++j;
    edges.emplace_back(vs[i], vs[j], h.weight(e));
  }
  return Graph(h.num_vertices(), edges);
}

}  // namespace hbc
