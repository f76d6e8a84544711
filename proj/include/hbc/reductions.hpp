#pragma once

#include <cstdint>

#include "hbc/graph.hpp"
#include "hbc/hypergraph.hpp"

namespace hbc {

/// Replaces every hyperedge e by a clique with weight w(e) / (rank(e) - 1) on
/// each pair. Vertex degrees are preserved exactly.
Graph clique_reduce(const Hypergraph& h);

/// Replaces every hyperedge by one uniformly random pair of its vertices
/// carrying the full weight. One Rng stream, consumed in edge order.
Graph random_reduce(const Hypergraph& h, std::uint64_t seed);

}  // namespace hbc
