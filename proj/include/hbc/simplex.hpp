#pragma once

#include <cstddef>
#include <vector>

namespace hbc::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Term {
  std::size_t var;
  double coeff;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

/// maximise objective . z  subject to constraints, z >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> values;
  double objective = 0.0;
  std::size_t pivots = 0;
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule.
/// `tol` is the pivot / reduced-cost tolerance.
Solution solve(const LinearProgram& program, double tol = 1e-11);

}  // namespace hbc::lp
