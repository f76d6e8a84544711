#include "hbc/diffusion.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hbc/errors.hpp"
#include "hbc/kernels.hpp"
#include "hbc/rate_solver.hpp"
#include "hbc/reductions.hpp"
#include "hbc/rng.hpp"

namespace hbc {

void DiffusionConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("diffusion: epsilon must be positive");
  }
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("diffusion: theta must be positive");
  }
  if (window == 0) throw std::invalid_argument("diffusion: window must be positive");
  if (!(eigen_tolerance > 0.0)) throw std::invalid_argument("diffusion: eigen tolerance");
  if (max_halvings > 60) throw std::invalid_argument("diffusion: at most 60 step halvings");
  if (!(min_event_fraction >= 0.0 && min_event_fraction <= 1.0)) {
    throw std::invalid_argument("diffusion: min_event_fraction must lie in [0, 1]");
  }
}

VertexVector start_vector(const Hypergraph& h, const DiffusionConfig& config) {
  const std::size_t n = h.num_vertices();
  switch (config.start) {
    case StartKind::CliqueEigenvector:
      return min_eigenpair_nonisolated(clique_reduce(h), config.eigen_tolerance).scaled;
    case StartKind::UserSupplied: {
      if (config.user_start.size() != n) {
        throw std::invalid_argument("diffusion: start vector has length " +
                                    std::to_string(config.user_start.size()) + ", expected " +
                                    std::to_string(n));
      }
      for (double x : config.user_start) {
        if (!std::isfinite(x)) throw std::invalid_argument("diffusion: non-finite start entry");
      }
      return config.user_start;
    }
    case StartKind::Random: {
      Rng rng(config.seed);
      VertexVector f(n);
      for (double& x : f) x = 2.0 * rng.uniform() - 1.0;
      return f;
    }
  }
  throw std::invalid_argument("diffusion: unknown start kind");
}

Graph fbca_graph(const Hypergraph& h, std::span<const double> f) {
  const auto ex = kernels::parallel::edge_extremes(h, f);
  std::vector<std::tuple<VertexId, VertexId, double>> edges;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const double w = h.weight(e) / (static_cast<double>(ex.max_count[e]) * ex.min_count[e]);
    for (VertexId u : h.edge(e)) {
      if (f[u] != ex.max_value[e]) continue;
      for (VertexId v : h.edge(e)) {
        if (f[v] == ex.min_value[e]) edges.emplace_back(u, v, w);
      }
    }
  }
  return Graph(h.num_vertices(), edges);
}

namespace {

using Clock = std::chrono::steady_clock;

// Rayleigh quotients at or below this are round-off around an exact zero
// eigenvalue; relative decreases there are noise.
constexpr double kZeroRayleigh = 1e-14;

double norm_w(const Hypergraph& h, std::span<const double> f) {
  return std::sqrt(weighted_norm_sq(h, f));
}

void normalise(const Hypergraph& h, VertexVector& f) {
  const double nrm = norm_w(h, f);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw NumericalError("diffusion reached a vector with zero or non-finite weighted norm");
  }
  for (double& x : f) x /= nrm;
}

struct Event {
  double time = std::numeric_limits<double>::infinity();
  VertexId mover = 0;    // reaches the extreme value of some edge at `time`
  VertexId target = 0;   // the extreme vertex it meets
  bool opposite = false; // mover lands on -target: the edge's discrepancy hits 0
};

// First time at which, moving linearly along the rate, a vertex of some edge
// catches up with that edge's maximum or minimum, or an edge's discrepancy
// changes sign. Past it the rate was computed for the wrong edge states.
Event first_event(const Hypergraph& h, std::span<const double> f, std::span<const double> rate) {
  Event ev;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto vs = h.edge(e);
    VertexId top = vs[0], bottom = vs[0];
    for (VertexId v : vs) {
      if (f[v] > f[top] || (f[v] == f[top] && rate[v] > rate[top])) top = v;
      if (f[v] < f[bottom] || (f[v] == f[bottom] && rate[v] < rate[bottom])) bottom = v;
    }
    const double disc = f[top] + f[bottom];
    const double slope = rate[top] + rate[bottom];
    if ((disc > 0.0 && slope < 0.0) || (disc < 0.0 && slope > 0.0)) {
      const double t = -disc / slope;
      if (t < ev.time) ev = {t, top, bottom, true};
    }
    for (VertexId v : vs) {
      if (f[v] < f[top] && rate[v] > rate[top]) {
        const double t = (f[top] - f[v]) / (rate[v] - rate[top]);
        if (t < ev.time) ev = {t, v, top, false};
      }
      if (f[v] > f[bottom] && rate[v] < rate[bottom]) {
        const double t = (f[v] - f[bottom]) / (rate[bottom] - rate[v]);
        if (t < ev.time) ev = {t, v, bottom, false};
      }
    }
  }
  return ev;
}

// Moves along the rate. A step is cut short at the first event, where the
// meeting values are made exactly equal (or opposite) so that the next rate
// sees the new classes and the zero discrepancy. With max_halvings > 0 a step that raises the Rayleigh quotient is
// halved; the smallest step is taken if none works.
void advance(const Hypergraph& h, DiffusionState& next, double epsilon, bool renormalize,
             const VertexVector& rate, Clock::time_point t0, std::size_t max_halvings = 0,
             bool events = false, double min_event_fraction = 0.0) {
  const double before = next.seconds.empty() ? 0.0 : next.seconds.back();
  const double prev = next.rayleigh.empty() ? discrepancy_ratio(h, next.f) : next.rayleigh.back();
  const Event ev = events ? first_event(h, next.f, rate) : Event{};
  const bool cut = ev.time < epsilon && ev.time >= min_event_fraction * epsilon;
  VertexVector trial(next.f.size());
  double step = cut ? ev.time : epsilon;
  double value = 0.0;
  for (std::size_t k = 0;; ++k, step *= 0.5) {
    for (std::size_t v = 0; v < trial.size(); ++v) trial[v] = next.f[v] + step * rate[v];
    if (cut && k == 0) {
      // Vertices moving in lockstep with the mover land on the target too.
      const double fm = next.f[ev.mover], rm = rate[ev.mover];
      const double landing = ev.opposite ? -trial[ev.target] : trial[ev.target];
      for (std::size_t v = 0; v < trial.size(); ++v) {
        if (next.f[v] == fm && rate[v] == rm) trial[v] = landing;
      }
    }
    if (renormalize) {
      normalise(h, trial);
    } else if (!(weighted_norm_sq(h, trial) > 0.0)) {
      throw NumericalError("diffusion reached the zero vector");
    }
    value = discrepancy_ratio(h, trial);
    if (k >= max_halvings || value <= prev) break;
  }
  next.f.swap(trial);
  ++next.step;
  next.rate_norm.push_back(norm_w(h, rate));
  next.rayleigh.push_back(value);
  next.step_size.push_back(step);
  next.seconds.push_back(std::chrono::duration<double>(Clock::now() - t0).count() + before);
}

void check_state(const Hypergraph& h, const DiffusionState& state) {
  if (state.f.size() != h.num_vertices()) throw std::invalid_argument("diffusion: length mismatch");
  if (!(weighted_norm_sq(h, state.f) > 0.0)) {
    throw NumericalError("diffusion: state has zero weighted norm");
  }
}

VertexVector even_split(const Hypergraph& h, std::span<const double> f) {
  VertexVector r(h.num_vertices());
  kernels::parallel::even_split_rate(h, f, r);
  return r;
}

template <typename RateFn>
DiffusionResult run(const Hypergraph& h, const DiffusionConfig& config, RateFn rate_of,
                    bool snapshots) {
  config.validate();
  DiffusionState state;
  state.f = start_vector(h, config);
  if (config.renormalize) {
    normalise(h, state.f);
  } else {
    check_state(h, state);
  }
  state.rayleigh.push_back(discrepancy_ratio(h, state.f));

  DiffusionResult out;
  VertexVector best = state.f;
  double best_r = state.rayleigh.back();
  std::size_t quiet = 0;
  const auto start = Clock::now();
  VertexVector rate = rate_of(state.f);
  while (state.step < config.max_steps) {
    if (snapshots) state.snapshots.push_back(fbca_graph(h, state.f));
    if (norm_w(h, rate) == 0.0) {
      out.converged = true;
      break;
    }
    advance(h, state, config.epsilon, config.renormalize, rate, Clock::now(),
            config.max_halvings, config.stop_at_events, config.min_event_fraction);
    const double prev = state.rayleigh[state.rayleigh.size() - 2];
    const double cur = state.rayleigh.back();
    if (cur < best_r) {
      best_r = cur;
      best = state.f;
    }
    const bool flat = (prev - cur) / std::max(prev, 1e-15) < config.theta || cur <= kZeroRayleigh;
    quiet = flat ? quiet + 1 : 0;
    rate = rate_of(state.f);
    // Cumulative time, including the rate for the next step.
    state.seconds.back() = std::chrono::duration<double>(Clock::now() - start).count();
    if (quiet >= config.window) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged) {
    state.f = best;
    rate = rate_of(state.f);
  }
  out.lambda = discrepancy_ratio(h, state.f);
  VertexVector res(rate.size());
  for (std::size_t v = 0; v < res.size(); ++v) res[v] = rate[v] + out.lambda * state.f[v];
  out.residual = norm_w(h, res) / norm_w(h, state.f);
  out.state = std::move(state);
  return out;
}

}  // namespace

DiffusionState fbc_step(const Hypergraph& h, const DiffusionState& state, double epsilon,
                        bool renormalize) {
  check_state(h, state);
  const auto t0 = Clock::now();
  const VertexVector rate = compute_rate(h, state.f).rate;
  DiffusionState next = state;
  advance(h, next, epsilon, renormalize, rate, t0);
  return next;
}

DiffusionState fbca_step(const Hypergraph& h, const DiffusionState& state, double epsilon,
                         bool renormalize) {
  check_state(h, state);
  const auto t0 = Clock::now();
  DiffusionState next = state;
  advance(h, next, epsilon, renormalize, even_split(h, state.f), t0);
  return next;
}

DiffusionResult run_fbc(const Hypergraph& h, const DiffusionConfig& config) {
  return run(
      h, config, [&](const VertexVector& f) { return compute_rate(h, f).rate; }, false);
}

DiffusionResult run_fbca(const Hypergraph& h, const DiffusionConfig& config) {
  return run(
      h, config, [&](const VertexVector& f) { return even_split(h, f); }, config.keep_snapshots);
}

}  // namespace hbc
