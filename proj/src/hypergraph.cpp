#include "hbc/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hbc/kernels.hpp"

namespace hbc {

namespace {

std::vector<char> membership(std::size_t n, std::span<const VertexId> vertices) {
  std::vector<char> mask(n, 0);
  for (VertexId v : vertices) {
    if (v >= n) throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  return mask;
}

}  // namespace

void Bipartition::validate(std::size_t num_vertices) const {
  if (left.empty() && right.empty()) throw std::invalid_argument("bipartition is empty");
  std::vector<char> side(num_vertices, 0);
  for (VertexId v : left) {
    if (v >= num_vertices) throw std::invalid_argument("bipartition id out of range");
    if (side[v]) throw std::invalid_argument("repeated vertex in bipartition");
    side[v] = 1;
  }
  for (VertexId v : right) {
    if (v >= num_vertices) throw std::invalid_argument("bipartition id out of range");
    if (side[v]) throw std::invalid_argument("L and R intersect");
    side[v] = 2;
  }
}

Hypergraph::Hypergraph(std::size_t num_vertices, const std::vector<Edge>& edges)
    : degrees_(num_vertices, 0.0) {
  if (num_vertices == 0) throw std::invalid_argument("hypergraph needs at least one vertex");
  std::vector<char> seen(num_vertices, 0);
  std::vector<std::size_t> incidence_count(num_vertices, 0);
  weights_.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    if (edge.vertices.size() < 2) {
      throw std::invalid_argument("edge " + std::to_string(e) + " has rank < 2");
    }
    if (!(edge.weight > 0.0) || !std::isfinite(edge.weight)) {
      throw std::invalid_argument("edge " + std::to_string(e) + " has nonpositive weight");
    }
    for (VertexId v : edge.vertices) {
      if (v >= num_vertices) {
        throw std::invalid_argument("edge " + std::to_string(e) + " has vertex id out of range");
      }
      if (seen[v]) {
        for (VertexId u : edge.vertices) seen[u] = 0;
        throw std::invalid_argument("edge " + std::to_string(e) + " repeats a vertex");
      }
      seen[v] = 1;
    }
    for (VertexId v : edge.vertices) {
      seen[v] = 0;
      ++incidence_count[v];
      degrees_[v] += edge.weight;
    }
    edge_vertices_.insert(edge_vertices_.end(), edge.vertices.begin(), edge.vertices.end());
    edge_offsets_.push_back(edge_vertices_.size());
    weights_.push_back(edge.weight);
  }

  incidence_offsets_.resize(num_vertices + 1, 0);
  for (std::size_t v = 0; v < num_vertices; ++v) {
    incidence_offsets_[v + 1] = incidence_offsets_[v] + incidence_count[v];
  }
  incidence_.resize(incidence_offsets_.back());
  std::vector<std::size_t> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (EdgeId e = 0; e < weights_.size(); ++e) {
    for (VertexId v : edge(e)) incidence_[cursor[v]++] = e;
  }
  for (double d : degrees_) total_volume_ += d;
}

std::size_t Hypergraph::min_rank() const {
  std::size_t best = 0;
  for (EdgeId e = 0; e < num_edges(); ++e) {
    best = (e == 0) ? rank(e) : std::min(best, rank(e));
  }
  return best;
}

std::size_t Hypergraph::max_rank() const {
  std::size_t best = 0;
  for (EdgeId e = 0; e < num_edges(); ++e) best = std::max(best, rank(e));
  return best;
}

bool Hypergraph::degrees_consistent() const {
  std::vector<double> fresh(num_vertices(), 0.0);
  for (EdgeId e = 0; e < num_edges(); ++e) {
    for (VertexId v : edge(e)) fresh[v] += weights_[e];
  }
  return fresh == degrees_;
}

std::vector<Hypergraph::Edge> Hypergraph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (EdgeId e = 0; e < num_edges(); ++e) {
    auto vs = edge(e);
    out.push_back({{vs.begin(), vs.end()}, weights_[e]});
  }
  return out;
}

double degree(const Hypergraph& h, VertexId v) {
  if (v >= h.num_vertices()) {
    throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
  }
  return h.degree_unchecked(v);
}

double volume(const Hypergraph& h, std::span<const VertexId> vertices) {
  double vol = 0.0;
  for (VertexId v : vertices) vol += degree(h, v);
  return vol;
}

double cut_weight(const Hypergraph& h, std::span<const VertexId> a, std::span<const VertexId> b,
                  std::span<const VertexId> avoid) {
  const std::size_t n = h.num_vertices();
  const auto in_a = membership(n, a);
  const auto in_b = membership(n, b);
  const auto in_avoid = membership(n, avoid);
  double total = 0.0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    bool meets_a = false, meets_b = false, meets_avoid = false;
    for (VertexId v : h.edge(e)) {
      meets_a |= in_a[v] != 0;
      meets_b |= in_b[v] != 0;
      meets_avoid |= in_avoid[v] != 0;
    }
    if (meets_a && meets_b && !meets_avoid) total += h.weight(e);
  }
  return total;
}

VertexVector indicator(std::size_t num_vertices, const Bipartition& part) {
  VertexVector chi(num_vertices, 0.0);
  for (VertexId v : part.left) chi.at(v) = 1.0;
  for (VertexId v : part.right) chi.at(v) = -1.0;
  return chi;
}

// With chi = indicator(L, R), |disc_chi(e)| is 2 for edges inside one side,
// 1 for edges joining one side to the outside only, and 0 otherwise, which
// reproduces the four weighted cut terms of the ratio.
double beta_hyper(const Hypergraph& h, const Bipartition& part) {
  part.validate(h.num_vertices());
  const VertexVector chi = indicator(h.num_vertices(), part);
  double vol = 0.0;
  for (VertexId v : part.left) vol += h.degree_unchecked(v);
  for (VertexId v : part.right) vol += h.degree_unchecked(v);
  if (!(vol > 0.0)) throw std::invalid_argument("beta_hyper: vol(L u R) is zero");
  double numerator = 0.0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    numerator += h.weight(e) * std::abs(discrepancy(h.edge(e), chi));
  }
  return numerator / vol;
}

double discrepancy(std::span<const VertexId> edge, std::span<const double> f) {
  double hi = f[edge[0]];
  double lo = hi;
  for (VertexId v : edge.subspan(1)) {
    hi = std::max(hi, f[v]);
    lo = std::min(lo, f[v]);
  }
  return hi + lo;
}

double weighted_discrepancy(const Hypergraph& h, EdgeId e, std::span<const double> f) {
  return h.weight(e) * std::abs(discrepancy(h.edge(e), f));
}

double weighted_discrepancy(const Hypergraph& h, std::span<const EdgeId> edges,
                            std::span<const double> f) {
  double total = 0.0;
  for (EdgeId e : edges) total += weighted_discrepancy(h, e, f);
  return total;
}

double discrepancy_energy(const Hypergraph& h, std::span<const double> f) {
  if (f.size() != h.num_vertices()) throw std::invalid_argument("vector length mismatch");
  return kernels::parallel::discrepancy_energy(h, f);
}

double discrepancy_ratio(const Hypergraph& h, std::span<const double> f) {
  const double norm = weighted_norm_sq(h, f);
  if (!(norm > 0.0)) throw std::invalid_argument("discrepancy_ratio: zero weighted norm");
  return discrepancy_energy(h, f) / norm;
}

double weighted_inner(const Hypergraph& h, std::span<const double> f, std::span<const double> g) {
  if (f.size() != h.num_vertices() || g.size() != h.num_vertices()) {
    throw std::invalid_argument("vector length mismatch");
  }
  return kernels::parallel::weighted_dot(h.degrees(), f, g);
}

double weighted_norm_sq(const Hypergraph& h, std::span<const double> f) {
  return weighted_inner(h, f, f);
}

}  // namespace hbc
