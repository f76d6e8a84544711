#pragma once

#include <cstddef>
#include <vector>

namespace hbc {

/// Dinic's algorithm (shortest augmenting paths in level graphs) on real
/// capacities.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t num_nodes);

  /// Adds arc a->b with capacity `cap` and reverse capacity `reverse_cap`
  /// (pass cap twice for an undirected edge). Returns an arc handle.
  std::size_t add_arc(std::size_t from, std::size_t to, double cap, double reverse_cap = 0.0);

  double solve(std::size_t source, std::size_t sink, double eps = 1e-13);

  /// Net flow along the arc (negative if it runs against the arc).
  double flow(std::size_t arc) const;

 private:
  struct Arc {
    std::size_t to;
    std::size_t rev;
    double cap;
    double original;
  };

  bool build_levels(std::size_t source, std::size_t sink, double eps);
  double push(std::size_t node, std::size_t sink, double amount, double eps);

  std::vector<std::vector<Arc>> adj_;
  std::vector<std::pair<std::size_t, std::size_t>> handles_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace hbc
