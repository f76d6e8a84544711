#pragma once

#include <span>
#include <vector>

#include "hbc/graph.hpp"
#include "hbc/hypergraph.hpp"

namespace hbc {

struct SweepResult {
  Bipartition part;
  double beta = 0.0;
  /// Score of candidate j, the first j + 1 vertices of the sweep order.
  /// +inf for zero-volume candidates.
  std::vector<double> scores;
};

/// Two-sided sweep over the n prefixes of sweep_order(f): candidate j puts
/// v_0..v_j into L if f < 0 and into R otherwise; the candidate with the
/// least beta_H wins (earliest on ties). Every threshold set
/// {|f| >= |f(v_j)|} is one of the prefixes. Throws std::invalid_argument on
/// an all-zero f.
SweepResult sweep_hyper(const Hypergraph& h, std::span<const double> f);

/// Same sweep scored by beta_G.
SweepResult sweep_graph(const Graph& g, std::span<const double> f);

struct CliqueCutResult {
  Bipartition part;
  double beta_graph = 0.0;
  double beta_hyper = 0.0;
  double eigenvalue = 0.0;
};

/// Baseline: sweep the minimum eigenvector of the clique reduction.
CliqueCutResult clique_cut(const Hypergraph& h, double tol = kDefaultEigenTolerance);

/// Vertex order used by the sweeps: |f| descending, ties by id ascending.
std::vector<VertexId> sweep_order(std::span<const double> f);

}  // namespace hbc
