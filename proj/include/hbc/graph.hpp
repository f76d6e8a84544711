#pragma once

#include <cstddef>
#include <span>
#include <tuple>
#include <vector>

#include "hbc/hypergraph.hpp"

namespace hbc {

/// Weighted undirected graph with optional self-loops.
///
/// Parallel edges are merged at construction. A self-loop of weight w at u
/// counts as an edge {u, u}: it adds 2w to deg(u), and the quadratic form
/// f^T J f picks up w * (f(u) + f(u))^2, same as every other edge.
class Graph {
 public:
  struct Neighbor {
    VertexId vertex;
    double weight;
  };

  Graph() = default;
  /// Edges as (u, v, w) with w >= 0; u == v is a self-loop.
  Graph(std::size_t num_vertices,
        const std::vector<std::tuple<VertexId, VertexId, double>>& edges);

  std::size_t num_vertices() const { return degrees_.size(); }
  /// Number of distinct non-loop edges.
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  std::span<const Neighbor> neighbors(VertexId u) const {
    return {neighbors_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }
  double loop_weight(VertexId u) const { return loops_[u]; }
  double degree(VertexId u) const { return degrees_[u]; }
  std::span<const double> degrees() const { return degrees_; }
  /// w(u, v) for u != v, or the loop weight for u == v. Linear in deg(u).
  double weight(VertexId u, VertexId v) const;
  double total_volume() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> neighbors_;
  std::vector<double> loops_;
  std::vector<double> degrees_;
};

struct EigenPair {
  double value = 0.0;
  /// Unit-norm eigenvector of Z_G = D^{-1/2} J_G D^{-1/2}.
  VertexVector vector;
  /// D^{-1/2} * vector, an eigenvector of D^{-1} J_G.
  VertexVector scaled;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// (J_G f)(u) = deg(u) f(u) + sum_v w(u, v) f(v), with loops as above.
VertexVector apply_J(const Graph& g, std::span<const double> f);

/// Bipartiteness ratio of (L, R) in G; every edge is counted once.
double beta_graph(const Graph& g, const Bipartition& part);

inline constexpr double kDefaultEigenTolerance = 1e-8;

/// Default iteration cap 100 n log n + 1000.
std::size_t default_eigen_iterations(std::size_t n);

/// Minimum eigenpair of Z_G by Lanczos with full reorthogonalisation and
/// explicit restarts, from a fixed start vector. Throws std::invalid_argument
/// on isolated vertices and NumericalError if the residual stays above `tol`
/// after `max_iter` matrix-vector products.
EigenPair min_eigenpair(const Graph& g, double tol = kDefaultEigenTolerance,
                        std::size_t max_iter = 0);

/// min_eigenpair on the subgraph induced by the vertices of positive degree.
/// Isolated vertices get 0 in both vectors. Throws std::invalid_argument if
/// the graph has no edges.
EigenPair min_eigenpair_nonisolated(const Graph& g, double tol = kDefaultEigenTolerance,
                                    std::size_t max_iter = 0);

/// Shifted power iteration on (2 + shift) I - Z_G. Slow, but simple enough to
/// serve as a reference for min_eigenpair.
EigenPair min_eigenpair_power(const Graph& g, double tol = kDefaultEigenTolerance,
                              std::size_t max_iter = 0);

/// Deterministic start vector: 1 + 1/(i+1), unit norm.
VertexVector eigen_start_vector(std::size_t n);

}  // namespace hbc
