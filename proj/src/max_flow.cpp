#include "hbc/max_flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace hbc {

MaxFlow::MaxFlow(std::size_t num_nodes) : adj_(num_nodes), level_(num_nodes), next_(num_nodes) {}

std::size_t MaxFlow::add_arc(std::size_t from, std::size_t to, double cap, double reverse_cap) {
  if (from >= adj_.size() || to >= adj_.size()) throw std::out_of_range("max flow: node id");
  if (!(cap >= 0.0) || !(reverse_cap >= 0.0)) {
    throw std::invalid_argument("max flow: negative capacity");
  }
  const std::size_t a = adj_[from].size();
  const std::size_t b = adj_[to].size() + (from == to ? 1 : 0);
  adj_[from].push_back({to, b, cap, cap});
  adj_[to].push_back({from, a, reverse_cap, reverse_cap});
  handles_.emplace_back(from, a);
  return handles_.size() - 1;
}

bool MaxFlow::build_levels(std::size_t source, std::size_t sink, double eps) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<std::size_t> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (const Arc& arc : adj_[u]) {
      if (arc.cap > eps && level_[arc.to] < 0) {
        level_[arc.to] = level_[u] + 1;
        q.push(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

double MaxFlow::push(std::size_t node, std::size_t sink, double amount, double eps) {
  if (node == sink) return amount;
  for (std::size_t& i = next_[node]; i < adj_[node].size(); ++i) {
    Arc& arc = adj_[node][i];
    if (arc.cap <= eps || level_[arc.to] != level_[node] + 1) continue;
    const double pushed = push(arc.to, sink, std::min(amount, arc.cap), eps);
    if (pushed > 0.0) {
      arc.cap -= pushed;
      adj_[arc.to][arc.rev].cap += pushed;
      return pushed;
    }
  }
  return 0.0;
}

double MaxFlow::solve(std::size_t source, std::size_t sink, double eps) {
  if (source >= adj_.size() || sink >= adj_.size() || source == sink) {
    throw std::invalid_argument("max flow: bad terminals");
  }
  double total = 0.0;
  while (build_levels(source, sink, eps)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (true) {
      const double pushed = push(source, sink, std::numeric_limits<double>::infinity(), eps);
      if (pushed <= eps) break;
      total += pushed;
    }
  }
  return total;
}

double MaxFlow::flow(std::size_t arc) const {
  const auto& [node, index] = handles_.at(arc);
  const Arc& a = adj_[node][index];
  return a.original - a.cap;
}

}  // namespace hbc
