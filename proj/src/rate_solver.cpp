#include "hbc/rate_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hbc/errors.hpp"
#include "hbc/max_flow.hpp"
#include "hbc/simplex.hpp"

namespace hbc {

namespace {

bool contains(const VertexSet& sorted, VertexId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

double volume_of(const VertexSet& vs, std::span<const double> degrees) {
  double s = 0.0;
  for (VertexId v : vs) s += degrees[v];
  return s;
}

double signed_cost(const EdgeRole& role) { return role.inflow ? role.cost : -role.cost; }

}  // namespace

MaxMinSets max_min_sets(const Hypergraph& h, std::span<const double> f) {
  if (f.size() != h.num_vertices()) throw std::invalid_argument("max_min_sets: length mismatch");
  MaxMinSets out;
  const std::size_t m = h.num_edges();
  out.max_set.resize(m);
  out.min_set.resize(m);
  out.discrepancy.resize(m);
  for (EdgeId e = 0; e < m; ++e) {
    auto vs = h.edge(e);
    double hi = f[vs[0]], lo = f[vs[0]];
    for (VertexId v : vs) {
      hi = std::max(hi, f[v]);
      lo = std::min(lo, f[v]);
    }
    for (VertexId v : vs) {
      if (f[v] == hi) out.max_set[e].push_back(v);
      if (f[v] == lo) out.min_set[e].push_back(v);
    }
    std::sort(out.max_set[e].begin(), out.max_set[e].end());
    std::sort(out.min_set[e].begin(), out.min_set[e].end());
    out.discrepancy[e] = hi + lo;
  }
  return out;
}

std::vector<EdgeRole> EquivalenceClass::roles(const MaxMinSets& sets, const Hypergraph& h) const {
  std::vector<EdgeRole> out;
  auto add = [&](const std::vector<EdgeId>& edges, Side side, bool inflow) {
    for (EdgeId e : edges) {
      EdgeRole role;
      role.edge = e;
      role.side = side;
      role.inflow = inflow;
      role.cost = h.weight(e) * std::abs(sets.discrepancy[e]);
      role.members = side == Side::Max ? sets.max_set[e] : sets.min_set[e];
      out.push_back(std::move(role));
    }
  };
  add(s_plus, Side::Max, true);
  add(i_plus, Side::Min, true);
  add(s_minus, Side::Max, false);
  add(i_minus, Side::Min, false);
  return out;
}

std::vector<EquivalenceClass> partition_classes(const Hypergraph& h, std::span<const double> f,
                                                const MaxMinSets& sets) {
  const std::size_t n = h.num_vertices();
  if (f.size() != n) throw std::invalid_argument("partition_classes: length mismatch");
  std::vector<VertexId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<VertexId>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return f[a] > f[b]; });

  std::vector<EquivalenceClass> classes;
  for (std::size_t i = 0; i < n;) {
    EquivalenceClass cls;
    cls.value = f[order[i]];
    std::size_t j = i;
    while (j < n && f[order[j]] == cls.value) cls.members.push_back(order[j++]);
    i = j;
    std::sort(cls.members.begin(), cls.members.end());
    for (VertexId v : cls.members) {
      for (EdgeId e : h.incident_edges(v)) cls.incident_edges.push_back(e);
    }
    std::sort(cls.incident_edges.begin(), cls.incident_edges.end());
    cls.incident_edges.erase(std::unique(cls.incident_edges.begin(), cls.incident_edges.end()),
                             cls.incident_edges.end());
    for (EdgeId e : cls.incident_edges) {
      const double d = sets.discrepancy[e];
      if (d == 0.0) continue;
      const bool on_max = f[sets.max_set[e].front()] == cls.value;
      const bool on_min = f[sets.min_set[e].front()] == cls.value;
      if (on_max) (d < 0.0 ? cls.s_plus : cls.s_minus).push_back(e);
      if (on_min) (d < 0.0 ? cls.i_plus : cls.i_minus).push_back(e);
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<EquivalenceClass> partition_classes(const Hypergraph& h, std::span<const double> f) {
  return partition_classes(h, f, max_min_sets(h, f));
}

std::vector<std::size_t> consumed_roles(const ClassInstance& instance, const VertexSet& assigned) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < instance.roles.size(); ++k) {
    const EdgeRole& role = instance.roles[k];
    std::size_t inside = 0;
    for (VertexId v : role.members) inside += contains(assigned, v) ? 1 : 0;
    // S- pays on the first touch; the others once every remaining member is in.
    const bool first_touch = role.side == Side::Max && !role.inflow;
    const bool consumed = first_touch ? inside > 0 : inside == role.members.size();
    if (consumed) out.push_back(k);
  }
  return out;
}

ClassLpSolution solve_class_lp(const ClassInstance& instance, std::span<const double> degrees) {
  ClassLpSolution out;
  const VertexSet& members = instance.members;
  if (members.empty()) throw std::invalid_argument("solve_class_lp: empty class");
  for (VertexId v : members) {
    if (!(degrees[v] > 0.0)) throw std::invalid_argument("solve_class_lp: zero-degree member");
  }

  auto density = [&](const VertexSet& p) {
    double c = 0.0;
    for (std::size_t k : consumed_roles(instance, p)) c += signed_cost(instance.roles[k]);
    out.net_flow = c;
    out.delta = c / volume_of(p, degrees);
  };

  if (instance.roles.empty() || members.size() == 1) {
    out.support = members;
    density(out.support);
    out.objective = out.delta;
    return out;
  }

  // Degrees and costs are rescaled to O(1) so the simplex tolerances are
  // meaningful; the support is scale-free.
  const std::size_t k = members.size();
  const double mean_deg = volume_of(members, degrees) / static_cast<double>(k);
  double max_cost = 0.0;
  for (const auto& role : instance.roles) max_cost = std::max(max_cost, role.cost);
  if (!(max_cost > 0.0)) max_cost = 1.0;

  lp::LinearProgram prog;
  prog.num_vars = k + instance.roles.size();
  prog.objective.assign(prog.num_vars, 0.0);
  lp::Constraint volume{{}, lp::Relation::Equal, 1.0};
  for (std::size_t i = 0; i < k; ++i) volume.terms.push_back({i, degrees[members[i]] / mean_deg});
  prog.constraints.push_back(volume);

  for (std::size_t j = 0; j < instance.roles.size(); ++j) {
    const EdgeRole& role = instance.roles[j];
    const std::size_t x = k + j;
    prog.objective[x] = signed_cost(role) / max_cost;
    lp::Relation rel;
    if (role.side == Side::Max) {
      rel = role.inflow ? lp::Relation::Equal : lp::Relation::GreaterEqual;
    } else {
      rel = role.inflow ? lp::Relation::LessEqual : lp::Relation::Equal;
    }
    for (VertexId v : role.members) {
      const auto it = std::lower_bound(members.begin(), members.end(), v);
      if (it == members.end() || *it != v) {
        throw std::invalid_argument("solve_class_lp: role member outside the class");
      }
      const auto yi = static_cast<std::size_t>(it - members.begin());
      prog.constraints.push_back({{{x, 1.0}, {yi, -1.0}}, rel, 0.0});
    }
  }

  const lp::Solution sol = lp::solve(prog);
  if (sol.status != lp::Status::Optimal) {
    throw NumericalError("class LP did not reach an optimum");
  }
  double ymax = 0.0;
  for (std::size_t i = 0; i < k; ++i) ymax = std::max(ymax, sol.values[i]);
  for (std::size_t i = 0; i < k; ++i) {
    if (sol.values[i] > 1e-8 * ymax) out.support.push_back(members[i]);
  }
  if (out.support.empty()) throw NumericalError("class LP returned an empty support");
  out.objective = sol.objective * max_cost / mean_deg;
  density(out.support);
  const double scale = max_cost / mean_deg;
  if (std::abs(out.objective - out.delta) > 1e-7 * (scale + std::abs(out.delta))) {
    throw NumericalError("class LP optimum " + std::to_string(out.objective) +
                         " disagrees with support density " + std::to_string(out.delta));
  }
  return out;
}

namespace {

std::vector<RateStep> solve_class(const Hypergraph& h, const EquivalenceClass& cls,
                                  const MaxMinSets& sets, std::size_t class_index) {
  const auto degrees = h.degrees();
  ClassInstance inst;
  for (VertexId v : cls.members) {
    if (degrees[v] > 0.0) inst.members.push_back(v);
  }
  inst.roles = cls.roles(sets, h);

  std::vector<RateStep> steps;
  while (!inst.members.empty()) {
    const ClassLpSolution lp = solve_class_lp(inst, degrees);
    const auto consumed = consumed_roles(inst, lp.support);

    RateStep step;
    step.class_index = class_index;
    step.assigned = lp.support;
    step.net_flow = lp.net_flow;
    step.delta = lp.delta;
    for (std::size_t k : consumed) step.consumed.push_back(inst.roles[k]);

    // A non-maximal optimal set shows up as an equal-density successor.
    if (!steps.empty()) {
      RateStep& prev = steps.back();
      const double tol = 1e-10 * std::max(1.0, std::abs(prev.delta));
      if (std::abs(prev.delta - step.delta) <= tol) {
        prev.assigned.insert(prev.assigned.end(), step.assigned.begin(), step.assigned.end());
        std::sort(prev.assigned.begin(), prev.assigned.end());
        prev.net_flow += step.net_flow;
        prev.delta = prev.net_flow / volume_of(prev.assigned, degrees);
        for (auto& role : step.consumed) prev.consumed.push_back(std::move(role));
        step.assigned.clear();
      }
    }

    // Remove P and the consumed roles; the rest keep only unassigned members.
    std::vector<bool> drop(inst.roles.size(), false);
    for (std::size_t k : consumed) drop[k] = true;
    std::vector<EdgeRole> rest;
    for (std::size_t k = 0; k < inst.roles.size(); ++k) {
      if (drop[k]) continue;
      EdgeRole role = std::move(inst.roles[k]);
      std::erase_if(role.members, [&](VertexId v) { return contains(lp.support, v); });
      rest.push_back(std::move(role));
    }
    inst.roles = std::move(rest);
    std::erase_if(inst.members, [&](VertexId v) { return contains(lp.support, v); });
    if (!step.assigned.empty()) steps.push_back(std::move(step));
  }
  return steps;
}

}  // namespace

RateResult compute_rate(const Hypergraph& h, std::span<const double> f) {
  if (f.size() != h.num_vertices()) throw std::invalid_argument("compute_rate: length mismatch");
  for (double x : f) {
    if (!std::isfinite(x)) throw std::invalid_argument("compute_rate: non-finite entry");
  }
  const MaxMinSets sets = max_min_sets(h, f);
  const auto classes = partition_classes(h, f, sets);

  std::vector<std::vector<RateStep>> per_class(classes.size());
  std::vector<std::string> errors(classes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(classes.size()); ++c) {
    try {
      per_class[c] = solve_class(h, classes[c], sets, static_cast<std::size_t>(c));
    } catch (const std::exception& ex) {
      errors[c] = ex.what();
    }
  }
  for (const auto& msg : errors) {
    if (!msg.empty()) throw NumericalError(msg);
  }

  RateResult out;
  out.rate.assign(h.num_vertices(), 0.0);
  for (auto& steps : per_class) {
    for (auto& step : steps) {
      for (VertexId v : step.assigned) out.rate[v] = step.delta;
      out.trace.push_back(std::move(step));
    }
  }
  return out;
}

double FlowDecomposition::contribution(EdgeId e, VertexId v) const {
  double s = 0.0;
  for (const auto& role : roles) {
    if (role.edge != e) continue;
    for (const auto& [u, x] : role.contributions) {
      if (u == v) s += x;
    }
  }
  return s;
}

VertexVector FlowDecomposition::vertex_totals(std::size_t num_vertices) const {
  VertexVector out(num_vertices, 0.0);
  for (const auto& role : roles) {
    for (const auto& [u, x] : role.contributions) out[u] += x;
  }
  return out;
}

FlowDecomposition decompose_flow(const Hypergraph& h, std::span<const double> f,
                                 const RateResult& rate, double tol) {
  (void)f;
  const auto degrees = h.degrees();
  FlowDecomposition out;
  for (const RateStep& step : rate.trace) {
    const VertexSet& T = step.assigned;
    const std::size_t nv = T.size(), nr = step.consumed.size();
    const std::size_t s = 0, t = 1;
    auto vnode = [&](std::size_t i) { return 2 + i; };
    auto rnode = [&](std::size_t j) { return 2 + nv + j; };

    double finite = 0.0, cut_s = 0.0;
    for (const auto& role : step.consumed) {
      finite += role.cost;
      if (role.inflow) cut_s += role.cost;
    }
    for (VertexId v : T) {
      const double cap = degrees[v] * std::abs(step.delta);
      finite += cap;
      if (step.delta < 0.0) cut_s += cap;
    }
    const double inf = finite + 1.0;

    MaxFlow net(2 + nv + nr);
    for (std::size_t i = 0; i < nv; ++i) {
      const double cap = degrees[T[i]] * std::abs(step.delta);
      if (step.delta >= 0.0) {
        net.add_arc(vnode(i), t, cap);
      } else {
        net.add_arc(s, vnode(i), cap);
      }
    }
    std::vector<std::vector<std::pair<std::size_t, VertexId>>> links(nr);
    for (std::size_t j = 0; j < nr; ++j) {
      const EdgeRole& role = step.consumed[j];
      if (role.inflow) {
        net.add_arc(s, rnode(j), role.cost);
      } else {
        net.add_arc(rnode(j), t, role.cost);
      }
      for (VertexId v : role.members) {
        const auto it = std::lower_bound(T.begin(), T.end(), v);
        if (it == T.end() || *it != v) continue;
        const auto i = static_cast<std::size_t>(it - T.begin());
        links[j].emplace_back(net.add_arc(rnode(j), vnode(i), inf, inf), v);
      }
    }
    const double value = net.solve(s, t);
    if (value < cut_s - tol * (1.0 + cut_s)) {
      throw NumericalError("flow decomposition: max flow " + std::to_string(value) +
                           " falls short of cut({s}) " + std::to_string(cut_s));
    }
    out.step_flow.push_back(value);
    out.step_cut.push_back(cut_s);
    for (std::size_t j = 0; j < nr; ++j) {
      const EdgeRole& role = step.consumed[j];
      RoleFlow rf{role.edge, role.side, role.inflow, role.cost, {}};
      for (const auto& [arc, v] : links[j]) {
        rf.contributions.emplace_back(v, net.flow(arc) / degrees[v]);
      }
      out.roles.push_back(std::move(rf));
    }
  }
  return out;
}

RuleReport check_rules(const Hypergraph& h, std::span<const double> f, const RateResult& rate,
                       const FlowDecomposition& flow, double activity_tol) {
  const auto degrees = h.degrees();
  const auto& r = rate.rate;
  const MaxMinSets sets = max_min_sets(h, f);
  RuleReport rep;

  auto rel = [](double got, double want) {
    return std::abs(got - want) / (1.0 + std::abs(want));
  };

  // Rule (1), per role; every edge with nonzero discrepancy needs both sides.
  std::vector<int> seen_max(h.num_edges(), 0), seen_min(h.num_edges(), 0);
  for (const auto& role : flow.roles) {
    const double target = -h.weight(role.edge) * sets.discrepancy[role.edge];
    double sum = 0.0;
    for (const auto& [v, x] : role.contributions) sum += degrees[v] * x;
    rep.rule1_error = std::max(rep.rule1_error, rel(sum, target));
    ++(role.side == Side::Max ? seen_max : seen_min)[role.edge];

    // Rule (2): active vertices sit at the extreme rate of their side.
    const VertexSet& side = role.side == Side::Max ? sets.max_set[role.edge]
                                                   : sets.min_set[role.edge];
    double extreme = r[side.front()];
    for (VertexId v : side) {
      extreme = role.side == Side::Max ? std::max(extreme, r[v]) : std::min(extreme, r[v]);
    }
    for (const auto& [v, x] : role.contributions) {
      if (std::abs(x) <= activity_tol) continue;
      if (!contains(side, v) || rel(r[v], extreme) > 1e-7) ++rep.rule2_violations;
    }
  }
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (sets.discrepancy[e] == 0.0) continue;
    if (seen_max[e] != 1 || seen_min[e] != 1) {
      rep.rule1_error = std::max(rep.rule1_error, h.weight(e) * std::abs(sets.discrepancy[e]));
    }
  }

  const VertexVector totals = flow.vertex_totals(h.num_vertices());
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    rep.vertex_sum_error =
        std::max(rep.vertex_sum_error, rel(degrees[v] * totals[v], degrees[v] * r[v]));
  }

  double norm = 0.0, norm_ref = 0.0, inner = 0.0, energy = 0.0;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    norm += degrees[v] * r[v] * r[v];
    inner += degrees[v] * f[v] * r[v];
  }
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const double d = sets.discrepancy[e];
    double rs = -std::numeric_limits<double>::infinity();
    double ri = std::numeric_limits<double>::infinity();
    for (VertexId v : sets.max_set[e]) rs = std::max(rs, r[v]);
    for (VertexId v : sets.min_set[e]) ri = std::min(ri, r[v]);
    norm_ref += -h.weight(e) * d * (rs + ri);
    energy += h.weight(e) * d * d;
  }
  rep.norm_identity_error = rel(norm, norm_ref);
  rep.rayleigh_error = rel(-inner, energy);
  return rep;
}

}  // namespace hbc
