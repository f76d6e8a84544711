#pragma once

// Data-parallel inner loops used by the diffusion and eigen solvers.
//
// Every kernel exists twice: `serial` is the plain reference loop, kept for
// testing and benchmarking; `parallel` is the OpenMP version the library
// calls. Parallel reductions sum fixed-size blocks and then combine the block
// partials in order, so results do not depend on the thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "hbc/hypergraph.hpp"

namespace hbc {
class Graph;
}

namespace hbc::kernels {

/// Per-edge extremes of f: max, min, and how many vertices attain each.
struct EdgeExtremes {
  std::vector<double> max_value;
  std::vector<double> min_value;
  std::vector<std::uint32_t> max_count;
  std::vector<std::uint32_t> min_count;
};

inline constexpr std::size_t kReductionBlock = 4096;

namespace serial {

double weighted_dot(std::span<const double> weights, std::span<const double> f,
                    std::span<const double> g);
double discrepancy_energy(const Hypergraph& h, std::span<const double> f);
EdgeExtremes edge_extremes(const Hypergraph& h, std::span<const double> f);
/// r = -D_H^{-1} J_G f for the graph that splits each edge's weight evenly
/// over max-set x min-set pairs.
void even_split_rate(const Hypergraph& h, std::span<const double> f, std::span<double> rate);
/// out = J_G f.
void apply_signless(const Graph& g, std::span<const double> f, std::span<double> out);
/// out = D^{-1/2} J_G D^{-1/2} x.
void apply_normalized(const Graph& g, std::span<const double> x, std::span<double> out);

}  // namespace serial

namespace parallel {

double weighted_dot(std::span<const double> weights, std::span<const double> f,
                    std::span<const double> g);
double discrepancy_energy(const Hypergraph& h, std::span<const double> f);
EdgeExtremes edge_extremes(const Hypergraph& h, std::span<const double> f);
void even_split_rate(const Hypergraph& h, std::span<const double> f, std::span<double> rate);
void apply_signless(const Graph& g, std::span<const double> f, std::span<double> out);
void apply_normalized(const Graph& g, std::span<const double> x, std::span<double> out);

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace hbc::kernels
