#pragma once

// Rate of change r = df/dt = -D_H^{-1} J_H f of the nonlinear diffusion.
//
// Vertices with equal f-values form equivalence classes. Within a class the
// rates are fixed by repeatedly solving a small LP for the densest set P of
// net discrepancy flow, assigning r = delta(P) = C(P) / vol(P) to P, and
// recursing on the rest with the consumed edge roles removed. The assigned
// delta values strictly decrease along the recursion.
//
// An edge with nonzero discrepancy plays two roles: on its max-side S(e) and
// on its min-side I(e). A flat edge (all values equal) has S(e) = I(e) = e and
// both roles act on the same class, each carrying the full c_f(e).

#include <cstddef>
#include <span>
#include <vector>

#include "hbc/hypergraph.hpp"

namespace hbc {

struct MaxMinSets {
  std::vector<VertexSet> max_set;  // S_f(e)
  std::vector<VertexSet> min_set;  // I_f(e)
  std::vector<double> discrepancy;
};

MaxMinSets max_min_sets(const Hypergraph& h, std::span<const double> f);

enum class Side { Max, Min };

/// One side of an edge as seen by one class.
///   inflow  (discrepancy < 0): pushes rate up; S-side needs all of S(e)
///           assigned together, I-side pays once the rest of I(e) is assigned.
///   outflow (discrepancy > 0): pulls rate down; S-side pays on the first
///           assignment touching S(e), I-side needs all of I(e) together.
struct EdgeRole {
  EdgeId edge = 0;
  Side side = Side::Max;
  bool inflow = false;
  double cost = 0.0;  // c_f(e) = w(e) |disc(e)|
  VertexSet members;  // S(e) or I(e), restricted to still-unassigned vertices
};

struct EquivalenceClass {
  double value = 0.0;
  VertexSet members;
  std::vector<EdgeId> incident_edges;  // E_U
  std::vector<EdgeId> s_plus, s_minus, i_plus, i_minus;

  /// The four signed sets as roles (S+ and I+ inflow; S- and I- outflow).
  std::vector<EdgeRole> roles(const MaxMinSets& sets, const Hypergraph& h) const;
};

/// Groups vertices by exact equality of f and classifies their edges.
/// Classes are ordered by decreasing value.
std::vector<EquivalenceClass> partition_classes(const Hypergraph& h, std::span<const double> f,
                                                const MaxMinSets& sets);

/// Convenience overload computing the max/min sets itself.
std::vector<EquivalenceClass> partition_classes(const Hypergraph& h, std::span<const double> f);

/// Remaining part of a class during the recursion.
struct ClassInstance {
  VertexSet members;
  std::vector<EdgeRole> roles;
};

struct ClassLpSolution {
  VertexSet support;  // P
  double delta = 0.0;  // C(P) / vol(P)
  double net_flow = 0.0;  // C(P)
  double objective = 0.0;  // LP optimum
};

/// Solves the class LP (y per member, x per role, sum deg*y = 1) and returns
/// the support of the optimum with its density. Instances without roles
/// short-circuit to P = U, delta = 0; singletons to P = U without the LP.
/// Throws NumericalError if the LP fails or its optimum disagrees with the
/// density of the extracted support.
ClassLpSolution solve_class_lp(const ClassInstance& instance, std::span<const double> degrees);

/// Which roles assigning `assigned` consumes from `instance`.
std::vector<std::size_t> consumed_roles(const ClassInstance& instance, const VertexSet& assigned);

struct RateStep {
  std::size_t class_index = 0;
  VertexSet assigned;  // P (merged if the LP returned a non-maximal set)
  double delta = 0.0;
  double net_flow = 0.0;  // C(P)
  std::vector<EdgeRole> consumed;
};

struct RateResult {
  VertexVector rate;
  std::vector<RateStep> trace;
};

/// The unique rate vector satisfying the diffusion rules at f, with the
/// per-class assignment trace. Classes are solved in parallel.
RateResult compute_rate(const Hypergraph& h, std::span<const double> f);

/// Per-edge contributions r_e(v) recovered by max-flow on each trace step.
struct RoleFlow {
  EdgeId edge = 0;
  Side side = Side::Max;
  bool inflow = false;
  double cost = 0.0;
  std::vector<std::pair<VertexId, double>> contributions;  // (v, r_e(v))
};

struct FlowDecomposition {
  std::vector<RoleFlow> roles;
  std::vector<double> step_flow;  // max-flow value per trace step
  std::vector<double> step_cut;   // cut({s}) per trace step

  /// sum over roles of edge e of r_e(v).
  double contribution(EdgeId e, VertexId v) const;
  /// sum_e r_e(v) for every vertex.
  VertexVector vertex_totals(std::size_t num_vertices) const;
};

/// Throws NumericalError if some step's max flow falls short of cut({s}).
FlowDecomposition decompose_flow(const Hypergraph& h, std::span<const double> f,
                                 const RateResult& rate, double tol = 1e-9);

/// Largest violations of the diffusion rules and the derived identities.
struct RuleReport {
  double rule1_error = 0.0;       // |sum_{S or I} deg r_e - (-w disc)|
  std::size_t rule2_violations = 0;
  double vertex_sum_error = 0.0;  // |deg r(v) - sum_e deg r_e(v)|
  double norm_identity_error = 0.0;
  double rayleigh_error = 0.0;    // |-<f, r>_w - sum_e w disc^2|
  bool ok(double tol) const {
    return rule1_error <= tol && rule2_violations == 0 && vertex_sum_error <= tol &&
           norm_identity_error <= tol && rayleigh_error <= tol;
  }
};

RuleReport check_rules(const Hypergraph& h, std::span<const double> f, const RateResult& rate,
                       const FlowDecomposition& flow, double activity_tol = 1e-9);

}  // namespace hbc
