#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hbc/graph.hpp"
#include "hbc/hypergraph.hpp"

namespace hbc {

enum class StartKind { CliqueEigenvector, UserSupplied, Random };

struct DiffusionConfig {
  double epsilon = 1.0;
  double theta = 1e-6;          // relative Rayleigh decrease threshold
  std::size_t window = 10;      // consecutive sub-threshold steps to stop
  std::size_t max_steps = 1000;
  bool renormalize = true;      // rescale to ||f||_w = 1 after each step
  // A step that raises the Rayleigh quotient is retried with half the step
  // size, up to this many times. 0 gives the plain fixed-step update.
  std::size_t max_halvings = 30;
  // Cut a step short where a vertex would overtake an edge's max or min, and
  // merge the two values there.
  bool stop_at_events = true;
  // Events earlier than this fraction of epsilon are skipped and the full
  // step is taken instead. On large instances events come so thick that
  // honouring all of them shrinks the steps geometrically and the stopping
  // rule fires on a stalled iterate.
  double min_event_fraction = 1.0 / 64;
  StartKind start = StartKind::CliqueEigenvector;
  std::uint64_t seed = 0;       // for StartKind::Random
  VertexVector user_start;      // for StartKind::UserSupplied
  bool keep_snapshots = false;  // even-split variant: retain per-step graphs
  double eigen_tolerance = kDefaultEigenTolerance;

  /// Throws std::invalid_argument on nonpositive epsilon/theta or zero window.
  void validate() const;
};

struct DiffusionState {
  VertexVector f;
  std::size_t step = 0;
  std::vector<double> rayleigh;  // R(f_t) for t = 0..step
  std::vector<double> rate_norm; // ||r_t||_w for t = 0..step-1
  std::vector<double> step_size; // step actually taken, epsilon / 2^k
  std::vector<double> seconds;   // wall time at the end of each step
  std::vector<Graph> snapshots;
};

struct DiffusionResult {
  DiffusionState state;
  double lambda = 0.0;   // R(f_final) = D(f_final)
  double residual = 0.0; // ||r + lambda f||_w / ||f||_w at f_final
  bool converged = false;
};

/// Starting vector for the configured start kind. The default is the
/// D^{-1/2}-scaled minimum eigenvector of Z for the clique reduction.
VertexVector start_vector(const Hypergraph& h, const DiffusionConfig& config);

/// One exact step: f + epsilon * compute_rate(h, f).rate, optionally
/// renormalised. Throws NumericalError on a zero vector.
DiffusionState fbc_step(const Hypergraph& h, const DiffusionState& state, double epsilon,
                        bool renormalize = true);

/// One approximate step using the even-split graph instead of the LP.
DiffusionState fbca_step(const Hypergraph& h, const DiffusionState& state, double epsilon,
                         bool renormalize = true);

/// Graph splitting w(e) evenly over the ordered pairs S_f(e) x I_f(e); pairs
/// with u == v become self-loops.
Graph fbca_graph(const Hypergraph& h, std::span<const double> f);

/// Iterates the exact diffusion, halving a step that would raise the Rayleigh
/// quotient (see DiffusionConfig::max_halvings), until the relative Rayleigh decrease stays
/// below theta for `window` consecutive steps, the rate vanishes, or
/// max_steps is hit. Without convergence the iterate with the least Rayleigh
/// quotient is returned.
DiffusionResult run_fbc(const Hypergraph& h, const DiffusionConfig& config);

/// Same loop with even-split steps. Not guaranteed to be monotone.
DiffusionResult run_fbca(const Hypergraph& h, const DiffusionConfig& config);

}  // namespace hbc
