#include "hbc/graph.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "hbc/errors.hpp"
#include "hbc/kernels.hpp"

namespace hbc {

Graph::Graph(std::size_t num_vertices,
             const std::vector<std::tuple<VertexId, VertexId, double>>& edges) {
  loops_.assign(num_vertices, 0.0);
  degrees_.assign(num_vertices, 0.0);
  std::map<std::pair<VertexId, VertexId>, double> merged;
  for (const auto& [u, v, w] : edges) {
    if (u >= num_vertices || v >= num_vertices) {
      throw std::invalid_argument("graph edge endpoint out of range");
    }
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("graph edge weight must be >= 0");
    if (u == v) {
      loops_[u] += w;
      degrees_[u] += 2.0 * w;
      continue;
    }
    merged[{std::min(u, v), std::max(u, v)}] += w;
  }

  std::vector<std::size_t> count(num_vertices, 0);
  for (const auto& [key, w] : merged) {
    ++count[key.first];
    ++count[key.second];
  }
  offsets_.assign(num_vertices + 1, 0);
  for (std::size_t u = 0; u < num_vertices; ++u) offsets_[u + 1] = offsets_[u] + count[u];
  neighbors_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Map iteration is ordered by (min, max), so every adjacency list ends up
  // sorted by neighbour id.
  for (const auto& [key, w] : merged) {
    neighbors_[fill[key.first]++] = {key.second, w};
    degrees_[key.first] += w;
  }
  for (const auto& [key, w] : merged) {
    neighbors_[fill[key.second]++] = {key.first, w};
    degrees_[key.second] += w;
  }
  for (std::size_t u = 0; u < num_vertices; ++u) {
    std::sort(neighbors_.begin() + offsets_[u], neighbors_.begin() + offsets_[u + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

double Graph::weight(VertexId u, VertexId v) const {
  if (u >= num_vertices() || v >= num_vertices()) throw std::out_of_range("vertex id");
  if (u == v) return loops_[u];
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v,
                             [](const Neighbor& a, VertexId x) { return a.vertex < x; });
  return (it != nb.end() && it->vertex == v) ? it->weight : 0.0;
}

double Graph::total_volume() const {
  double s = 0.0;
  for (double d : degrees_) s += d;
  return s;
}

VertexVector apply_J(const Graph& g, std::span<const double> f) {
  VertexVector out(g.num_vertices());
  kernels::parallel::apply_signless(g, f, out);
  return out;
}

double beta_graph(const Graph& g, const Bipartition& part) {
  part.validate(g.num_vertices());
  const VertexVector chi = indicator(g.num_vertices(), part);
  double vol = 0.0;
  for (VertexId v : part.left) vol += g.degree(v);
  for (VertexId v : part.right) vol += g.degree(v);
  if (!(vol > 0.0)) throw std::invalid_argument("beta_graph: bipartition has zero volume");
  double num = 0.0;
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    num += g.loop_weight(u) * std::abs(2.0 * chi[u]);
    for (const auto& nb : g.neighbors(u)) {
      if (nb.vertex > u) num += nb.weight * std::abs(chi[u] + chi[nb.vertex]);
    }
  }
  return num / vol;
}

std::size_t default_eigen_iterations(std::size_t n) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
  return static_cast<std::size_t>(100.0 * nn * std::log(nn)) + 1000;
}

VertexVector eigen_start_vector(std::size_t n) {
  VertexVector x(n);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 1.0 + 1.0 / static_cast<double>(i + 1);
    norm += x[i] * x[i];
  }
  norm = std::sqrt(norm);
  for (double& v : x) v /= norm;
  return x;
}

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

void check_graph(const Graph& g) {
  if (g.num_vertices() == 0) throw std::invalid_argument("eigen solver: empty graph");
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    if (!(g.degree(u) > 0.0)) {
      throw std::invalid_argument("eigen solver: isolated vertex " + std::to_string(u));
    }
  }
}

Vec apply_Z(const Graph& g, const Vec& x) {
  Vec out(x.size());
  kernels::parallel::apply_normalized(g, {x.data(), static_cast<std::size_t>(x.size())},
                                      {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

// Largest-magnitude entry (lowest index on ties) made positive.
void fix_sign(Vec& x) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    if (std::abs(x[i]) > std::abs(x[best])) best = i;
  }
  if (x[best] < 0.0) x = -x;
}

EigenPair finish(const Graph& g, Vec x, double value, double residual, std::size_t iters) {
  fix_sign(x);
  EigenPair out;
  out.value = value;
  out.residual = residual;
  out.iterations = iters;
  out.vector.assign(x.data(), x.data() + x.size());
  out.scaled.resize(out.vector.size());
  for (std::size_t i = 0; i < out.vector.size(); ++i) {
    out.scaled[i] = out.vector[i] / std::sqrt(g.degree(static_cast<VertexId>(i)));
  }
  return out;
}

// Orthogonalises v against the first k columns of V twice; returns the norm
// left over.
double orthogonalize(const Mat& V, Eigen::Index k, Vec& v) {
  for (int pass = 0; pass < 2; ++pass) {
    if (k == 0) break;
    const Vec c = V.leftCols(k).transpose() * v;
    v.noalias() -= V.leftCols(k) * c;
  }
  return v.norm();
}

}  // namespace

EigenPair min_eigenpair(const Graph& g, double tol, std::size_t max_iter) {
  check_graph(g);
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  if (max_iter == 0) max_iter = default_eigen_iterations(g.num_vertices());
  const Eigen::Index cap = std::min<Eigen::Index>(n, 100);
  const Eigen::Index keep = std::min<Eigen::Index>(cap / 4, 12);

  Mat V(n, cap), W(n, cap), H = Mat::Zero(cap, cap);
  const VertexVector start = eigen_start_vector(g.num_vertices());
  Vec next = Eigen::Map<const Vec>(start.data(), n);
  Eigen::Index k = 0;
  Eigen::Index fallback = 0;
  std::size_t matvecs = 0;
  double best_residual = INFINITY;

  while (true) {
    // Expand the basis with `next`.
    double nrm = orthogonalize(V, k, next);
    while (nrm < 1e-10 && fallback < n) {
      // Invariant subspace reached: continue with a fresh coordinate vector.
      next = Vec::Unit(n, fallback++);
      nrm = orthogonalize(V, k, next);
    }
    if (nrm >= 1e-10) {
      V.col(k) = next / nrm;
      W.col(k) = apply_Z(g, V.col(k));
      ++matvecs;
      const Vec h = V.leftCols(k + 1).transpose() * W.col(k);
      H.block(0, k, k + 1, 1) = h;
      H.block(k, 0, 1, k + 1) = h.transpose();
      ++k;
    }

    Eigen::SelfAdjointEigenSolver<Mat> es(H.topLeftCorner(k, k));
    const Vec s = es.eigenvectors().col(0);
    const double theta = es.eigenvalues()[0];
    Vec x = V.leftCols(k) * s;
    Vec r = W.leftCols(k) * s - theta * x;
    const double res = r.norm();
    best_residual = std::min(best_residual, res);
    if (res <= tol || k == n) return finish(g, x / x.norm(), theta, res, matvecs);
    if (matvecs >= max_iter) {
      throw NumericalError("eigen solver did not reach residual " + std::to_string(tol) +
                           " in " + std::to_string(max_iter) + " iterations (residual " +
                           std::to_string(best_residual) + ")");
    }

    if (k == cap) {
      // Thick restart on the lowest Ritz vectors; the residual of the first
      // keeps the basis a Krylov space.
      const Mat S = es.eigenvectors().leftCols(keep);
      const Mat Vk = V.leftCols(k) * S;
      const Mat Wk = W.leftCols(k) * S;
      V.leftCols(keep) = Vk;
      W.leftCols(keep) = Wk;
      H.setZero();
      H.topLeftCorner(keep, keep) = es.eigenvalues().head(keep).asDiagonal();
      k = keep;
      next = r;
    } else {
      next = W.col(k - 1);
    }
  }
}

EigenPair min_eigenpair_nonisolated(const Graph& g, double tol, std::size_t max_iter) {
  const std::size_t n = g.num_vertices();
  std::vector<VertexId> index(n, 0);
  std::vector<VertexId> kept;
  for (VertexId u = 0; u < n; ++u) {
    if (g.degree(u) > 0.0) {
      index[u] = static_cast<VertexId>(kept.size());
      kept.push_back(u);
    }
  }
  if (kept.empty()) throw std::invalid_argument("eigen solver: graph has no edges");
  if (kept.size() == n) return min_eigenpair(g, tol, max_iter);

  std::vector<std::tuple<VertexId, VertexId, double>> edges;
  for (VertexId u : kept) {
    if (g.loop_weight(u) > 0.0) edges.emplace_back(index[u], index[u], g.loop_weight(u));
    for (const auto& nb : g.neighbors(u)) {
      if (nb.vertex > u) edges.emplace_back(index[u], index[nb.vertex], nb.weight);
    }
  }
  const EigenPair sub = min_eigenpair(Graph(kept.size(), edges), tol, max_iter);
  EigenPair out = sub;
  out.vector.assign(n, 0.0);
  out.scaled.assign(n, 0.0);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    out.vector[kept[i]] = sub.vector[i];
    out.scaled[kept[i]] = sub.scaled[i];
  }
  return out;
}

EigenPair min_eigenpair_power(const Graph& g, double tol, std::size_t max_iter) {
  check_graph(g);
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  if (max_iter == 0) max_iter = 100 * default_eigen_iterations(g.num_vertices());
  const double shift = 2.0 + 1e-3;
  const VertexVector start = eigen_start_vector(g.num_vertices());
  Vec x = Eigen::Map<const Vec>(start.data(), n);
  double value = 0.0, res = INFINITY;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    const Vec zx = apply_Z(g, x);
    value = x.dot(zx);
    res = (zx - value * x).norm();
    if (res <= tol) return finish(g, x, value, res, it);
    x = shift * x - zx;
    x /= x.norm();
  }
  throw NumericalError("power iteration did not converge (residual " + std::to_string(res) + ")");
}

}  // namespace hbc
