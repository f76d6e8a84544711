#include "hbc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hbc/graph.hpp"

namespace hbc::kernels {

namespace {

void require_size(std::size_t got, std::size_t want) {
  if (got != want) throw std::invalid_argument("vector length mismatch");
}

// Sums term(i) for i < count in fixed blocks; the partials are combined in
// block order, so the value is independent of scheduling.
template <typename Term>
double blocked_sum(std::size_t count, Term term) {
  const std::size_t blocks = (count + kReductionBlock - 1) / kReductionBlock;
  if (blocks <= 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += term(i);
    return s;
  }
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(count, lo + kReductionBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[b] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

inline void extremes_of(const Hypergraph& h, EdgeId e, std::span<const double> f, double& hi,
                        double& lo, std::uint32_t& hi_count, std::uint32_t& lo_count) {
  auto vs = h.edge(e);
  hi = lo = f[vs[0]];
  hi_count = lo_count = 1;
  for (std::size_t k = 1; k < vs.size(); ++k) {
    const double x = f[vs[k]];
    if (x > hi) {
      hi = x;
      hi_count = 1;
    } else if (x == hi) {
      ++hi_count;
    }
    if (x < lo) {
      lo = x;
      lo_count = 1;
    } else if (x == lo) {
      ++lo_count;
    }
  }
}

inline double even_split_term(const Hypergraph& h, const EdgeExtremes& ex, VertexId u,
                              std::span<const double> f) {
  double acc = 0.0;
  const double fu = f[u];
  for (EdgeId e : h.incident_edges(u)) {
    const double wd = h.weight(e) * (ex.max_value[e] + ex.min_value[e]);
    if (fu == ex.max_value[e]) acc += wd / ex.max_count[e];
    if (fu == ex.min_value[e]) acc += wd / ex.min_count[e];
  }
  return -acc / h.degree_unchecked(u);
}

inline double signless_row(const Graph& g, VertexId u, std::span<const double> f) {
  double acc = (g.degree(u) + 2.0 * g.loop_weight(u)) * f[u];
  for (const auto& nb : g.neighbors(u)) acc += nb.weight * f[nb.vertex];
  return acc;
}

inline double normalized_row(const Graph& g, VertexId u, std::span<const double> x,
                             std::span<const double> inv_sqrt) {
  double acc = (g.degree(u) + 2.0 * g.loop_weight(u)) * inv_sqrt[u] * x[u];
  for (const auto& nb : g.neighbors(u)) acc += nb.weight * inv_sqrt[nb.vertex] * x[nb.vertex];
  return acc * inv_sqrt[u];
}

std::vector<double> inverse_sqrt_degrees(const Graph& g) {
  std::vector<double> out(g.num_vertices());
  for (std::size_t u = 0; u < out.size(); ++u) {
    const double d = g.degree(static_cast<VertexId>(u));
    if (!(d > 0.0)) throw std::invalid_argument("normalized operator: isolated vertex");
    out[u] = 1.0 / std::sqrt(d);
  }
  return out;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// ---------------------------------------------------------------------------
// Serial reference loops.

namespace serial {

double weighted_dot(std::span<const double> weights, std::span<const double> f,
                    std::span<const double> g) {
  require_size(f.size(), weights.size());
  require_size(g.size(), weights.size());
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * f[i] * g[i];
  return s;
}

double discrepancy_energy(const Hypergraph& h, std::span<const double> f) {
  require_size(f.size(), h.num_vertices());
  double s = 0.0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    double hi, lo;
    std::uint32_t hc, lc;
    extremes_of(h, e, f, hi, lo, hc, lc);
    s += h.weight(e) * (hi + lo) * (hi + lo);
  }
  return s;
}

EdgeExtremes edge_extremes(const Hypergraph& h, std::span<const double> f) {
  require_size(f.size(), h.num_vertices());
  const std::size_t m = h.num_edges();
  EdgeExtremes ex{std::vector<double>(m), std::vector<double>(m),
                  std::vector<std::uint32_t>(m), std::vector<std::uint32_t>(m)};
  for (EdgeId e = 0; e < m; ++e) {
    extremes_of(h, e, f, ex.max_value[e], ex.min_value[e], ex.max_count[e], ex.min_count[e]);
  }
  return ex;
}

void even_split_rate(const Hypergraph& h, std::span<const double> f, std::span<double> rate) {
  require_size(rate.size(), h.num_vertices());
  const EdgeExtremes ex = edge_extremes(h, f);
  for (VertexId u = 0; u < h.num_vertices(); ++u) {
    rate[u] = h.degree_unchecked(u) > 0.0 ? even_split_term(h, ex, u, f) : 0.0;
  }
}

void apply_signless(const Graph& g, std::span<const double> f, std::span<double> out) {
  require_size(f.size(), g.num_vertices());
  require_size(out.size(), g.num_vertices());
  for (VertexId u = 0; u < g.num_vertices(); ++u) out[u] = signless_row(g, u, f);
}

void apply_normalized(const Graph& g, std::span<const double> x, std::span<double> out) {
  require_size(x.size(), g.num_vertices());
  require_size(out.size(), g.num_vertices());
  const auto inv_sqrt = inverse_sqrt_degrees(g);
  for (VertexId u = 0; u < g.num_vertices(); ++u) out[u] = normalized_row(g, u, x, inv_sqrt);
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP versions. Per-vertex outputs are gathers, so each entry is written
// by exactly one thread and matches the serial loop bit for bit.

namespace parallel {

double weighted_dot(std::span<const double> weights, std::span<const double> f,
                    std::span<const double> g) {
  require_size(f.size(), weights.size());
  require_size(g.size(), weights.size());
  return blocked_sum(weights.size(), [&](std::size_t i) { return weights[i] * f[i] * g[i]; });
}

double discrepancy_energy(const Hypergraph& h, std::span<const double> f) {
  require_size(f.size(), h.num_vertices());
  return blocked_sum(h.num_edges(), [&](std::size_t e) {
    double hi, lo;
    std::uint32_t hc, lc;
    extremes_of(h, static_cast<EdgeId>(e), f, hi, lo, hc, lc);
    return h.weight(static_cast<EdgeId>(e)) * (hi + lo) * (hi + lo);
  });
}

EdgeExtremes edge_extremes(const Hypergraph& h, std::span<const double> f) {
  require_size(f.size(), h.num_vertices());
  const std::size_t m = h.num_edges();
  EdgeExtremes ex{std::vector<double>(m), std::vector<double>(m),
                  std::vector<std::uint32_t>(m), std::vector<std::uint32_t>(m)};
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t e = 0; e < static_cast<std::ptrdiff_t>(m); ++e) {
    extremes_of(h, static_cast<EdgeId>(e), f, ex.max_value[e], ex.min_value[e], ex.max_count[e],
                ex.min_count[e]);
  }
  return ex;
}

void even_split_rate(const Hypergraph& h, std::span<const double> f, std::span<double> rate) {
  require_size(rate.size(), h.num_vertices());
  const EdgeExtremes ex = edge_extremes(h, f);
  const auto n = static_cast<std::ptrdiff_t>(h.num_vertices());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t u = 0; u < n; ++u) {
    const auto v = static_cast<VertexId>(u);
    rate[u] = h.degree_unchecked(v) > 0.0 ? even_split_term(h, ex, v, f) : 0.0;
  }
}

void apply_signless(const Graph& g, std::span<const double> f, std::span<double> out) {
  require_size(f.size(), g.num_vertices());
  require_size(out.size(), g.num_vertices());
  const auto n = static_cast<std::ptrdiff_t>(g.num_vertices());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t u = 0; u < n; ++u) out[u] = signless_row(g, static_cast<VertexId>(u), f);
}

void apply_normalized(const Graph& g, std::span<const double> x, std::span<double> out) {
  require_size(x.size(), g.num_vertices());
  require_size(out.size(), g.num_vertices());
  const auto inv_sqrt = inverse_sqrt_degrees(g);
  const auto n = static_cast<std::ptrdiff_t>(g.num_vertices());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t u = 0; u < n; ++u) {
    out[u] = normalized_row(g, static_cast<VertexId>(u), x, inv_sqrt);
  }
}

}  // namespace parallel

}  // namespace hbc::kernels
