#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hbc {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using VertexSet = std::vector<VertexId>;
using VertexVector = std::vector<double>;

/// Two disjoint vertex sets. `left` receives +1 and `right` -1 in the
/// indicator vector used for bipartiteness computations.
struct Bipartition {
  VertexSet left;
  VertexSet right;

  /// Throws std::invalid_argument if the sets overlap, contain ids >= n,
  /// or are both empty.
  void validate(std::size_t num_vertices) const;
};

/// Weighted hypergraph H = (V, E, w) with dense 0-based vertex ids.
///
/// Immutable after construction. Edges are stored in CSR form together with
/// the vertex-to-edge incidence, and vertex degrees are cached. Edges with
/// identical vertex sets are kept as distinct edges.
class Hypergraph {
 public:
  struct Edge {
    std::vector<VertexId> vertices;
    double weight = 1.0;
  };

  Hypergraph() = default;

  /// Validates every edge (rank >= 2, ids in range, no repeated vertex,
  /// finite positive weight) and throws std::invalid_argument otherwise.
  Hypergraph(std::size_t num_vertices, const std::vector<Edge>& edges);

  std::size_t num_vertices() const { return degrees_.size(); }
  std::size_t num_edges() const { return weights_.size(); }

  std::span<const VertexId> edge(EdgeId e) const {
    return {edge_vertices_.data() + edge_offsets_[e],
            edge_offsets_[e + 1] - edge_offsets_[e]};
  }
  std::size_t rank(EdgeId e) const { return edge_offsets_[e + 1] - edge_offsets_[e]; }
  double weight(EdgeId e) const { return weights_[e]; }
  std::span<const double> weights() const { return weights_; }

  std::span<const EdgeId> incident_edges(VertexId v) const {
    return {incidence_.data() + incidence_offsets_[v],
            incidence_offsets_[v + 1] - incidence_offsets_[v]};
  }

  /// Cached sum of incident edge weights. No range check.
  double degree_unchecked(VertexId v) const { return degrees_[v]; }
  std::span<const double> degrees() const { return degrees_; }
  double total_volume() const { return total_volume_; }
  std::size_t min_rank() const;
  std::size_t max_rank() const;

  /// Recomputes every degree from the edge list and compares exactly.
  bool degrees_consistent() const;

  std::vector<Edge> edge_list() const;

 private:
  std::vector<std::size_t> edge_offsets_{0};
  std::vector<VertexId> edge_vertices_;
  std::vector<double> weights_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<EdgeId> incidence_;
  std::vector<double> degrees_;
  double total_volume_ = 0.0;
};

double degree(const Hypergraph& h, VertexId v);

double volume(const Hypergraph& h, std::span<const VertexId> vertices);

/// w(A, B | avoid): total weight of edges meeting both A and B and missing
/// `avoid`. An empty `avoid` gives the plain cut w(A, B).
double cut_weight(const Hypergraph& h, std::span<const VertexId> a,
                  std::span<const VertexId> b, std::span<const VertexId> avoid = {});

/// Hypergraph bipartiteness ratio of (L, R).
double beta_hyper(const Hypergraph& h, const Bipartition& part);

/// max_{u in e} f(u) + min_{v in e} f(v).
double discrepancy(std::span<const VertexId> edge, std::span<const double> f);

/// w(e) * |discrepancy(e, f)|.
double weighted_discrepancy(const Hypergraph& h, EdgeId e, std::span<const double> f);
double weighted_discrepancy(const Hypergraph& h, std::span<const EdgeId> edges,
                            std::span<const double> f);

/// Sum over edges of w(e) * discrepancy(e, f)^2, the quadratic form f^T J_H f.
double discrepancy_energy(const Hypergraph& h, std::span<const double> f);

/// D(f) = sum_e w(e) disc(e)^2 / sum_v deg(v) f(v)^2. Equal to the Rayleigh
/// quotient of the nonlinear operator at f.
double discrepancy_ratio(const Hypergraph& h, std::span<const double> f);

double weighted_inner(const Hypergraph& h, std::span<const double> f,
                      std::span<const double> g);
double weighted_norm_sq(const Hypergraph& h, std::span<const double> f);

/// Indicator vector: +1 on left, -1 on right, 0 elsewhere.
VertexVector indicator(std::size_t num_vertices, const Bipartition& part);

}  // namespace hbc
