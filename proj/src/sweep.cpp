#include "hbc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hbc/reductions.hpp"

namespace hbc {

std::vector<VertexId> sweep_order(std::span<const double> f) {
  std::vector<VertexId> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return std::abs(f[a]) > std::abs(f[b]); });
  return order;
}

namespace {

void check_vector(std::span<const double> f, std::size_t n) {
  if (f.size() != n) throw std::invalid_argument("sweep: length mismatch");
  bool nonzero = false;
  for (double x : f) {
    if (!std::isfinite(x)) throw std::invalid_argument("sweep: non-finite entry");
    nonzero |= x != 0.0;
  }
  if (!nonzero) throw std::invalid_argument("sweep: zero vector");
}

SweepResult pick(const std::vector<VertexId>& order, std::span<const double> f,
                 std::vector<double> scores) {
  std::size_t best = scores.size();
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (std::isfinite(scores[j]) && (best == scores.size() || scores[j] < scores[best])) best = j;
  }
  if (best == scores.size()) throw std::invalid_argument("sweep: every candidate has zero volume");
  SweepResult out;
  for (std::size_t i = 0; i <= best; ++i) {
    const VertexId v = order[i];
    (f[v] < 0.0 ? out.part.left : out.part.right).push_back(v);
  }
  std::sort(out.part.left.begin(), out.part.left.end());
  std::sort(out.part.right.begin(), out.part.right.end());
  out.beta = scores[best];
  out.scores = std::move(scores);
  return out;
}

// Numerator contribution of an edge given how many of its vertices are in
// L, in R, and in neither.
inline double edge_term(double w, std::size_t l, std::size_t r, std::size_t rank) {
  if (l > 0 && r > 0) return 0.0;
  if (l == 0 && r == 0) return 0.0;
  return (l + r == rank) ? 2.0 * w : w;
}

}  // namespace

SweepResult sweep_hyper(const Hypergraph& h, std::span<const double> f) {
  check_vector(f, h.num_vertices());
  const auto order = sweep_order(f);
  std::vector<std::size_t> in_l(h.num_edges(), 0), in_r(h.num_edges(), 0);
  std::vector<double> scores(order.size());
  double num = 0.0, vol = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    const VertexId v = order[j];
    const bool left = f[v] < 0.0;
    for (EdgeId e : h.incident_edges(v)) {
      const double w = h.weight(e);
      const std::size_t rank = h.rank(e);
      num -= edge_term(w, in_l[e], in_r[e], rank);
      ++(left ? in_l : in_r)[e];
      num += edge_term(w, in_l[e], in_r[e], rank);
    }
    vol += h.degree_unchecked(v);
    scores[j] = vol > 0.0 ? std::max(num, 0.0) / vol : std::numeric_limits<double>::infinity();
  }
  auto out = pick(order, f, std::move(scores));
  // Exact re-evaluation of the winner; the running sum may carry rounding.
  out.beta = beta_hyper(h, out.part);
  return out;
}

SweepResult sweep_graph(const Graph& g, std::span<const double> f) {
  check_vector(f, g.num_vertices());
  const auto order = sweep_order(f);
  std::vector<int> side(g.num_vertices(), 0);  // 0 out, 1 L, 2 R
  std::vector<double> scores(order.size());
  double num = 0.0, vol = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    const VertexId v = order[j];
    const int s = f[v] < 0.0 ? 1 : 2;
    for (const auto& nb : g.neighbors(v)) {
      const int t = side[nb.vertex];
      if (t == 0) {
        num += nb.weight;
      } else if (t == s) {
        num += nb.weight;
      } else {
        num -= nb.weight;
      }
    }
    num += 2.0 * g.loop_weight(v);
    side[v] = s;
    vol += g.degree(v);
    scores[j] = vol > 0.0 ? std::max(num, 0.0) / vol : std::numeric_limits<double>::infinity();
  }
  auto out = pick(order, f, std::move(scores));
  out.beta = beta_graph(g, out.part);
  return out;
}

CliqueCutResult clique_cut(const Hypergraph& h, double tol) {
  const Graph g = clique_reduce(h);
  const EigenPair pair = min_eigenpair_nonisolated(g, tol);
  const SweepResult sweep = sweep_graph(g, pair.scaled);
  CliqueCutResult out;
  out.part = sweep.part;
  out.beta_graph = sweep.beta;
  out.beta_hyper = beta_hyper(h, sweep.part);
  out.eigenvalue = pair.value;
  return out;
}

}  // namespace hbc
