#include "hbc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hbc::lp {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, kNone) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& obj(std::size_t c) { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= factor * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  void drop_row(std::size_t r) {
    const auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1));
    data_.erase(first, first + static_cast<std::ptrdiff_t>(cols_ + 1));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  // Bland's rule on columns [0, allowed). Returns false on unboundedness.
  Status optimise(std::size_t allowed, double tol, std::size_t& pivots, std::size_t limit) {
    while (true) {
      std::size_t enter = kNone;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (obj(c) < -tol) {
          enter = c;
          break;
        }
      }
      if (enter == kNone) return Status::Optimal;
      std::size_t leave = kNone;
      double best = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= tol) continue;
        const double ratio = rhs(r) / a;
        if (leave == kNone || ratio < best - tol ||
            (ratio <= best + tol && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == kNone) return Status::Unbounded;
      if (pivots++ >= limit) return Status::IterationLimit;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const LinearProgram& program, double tol) {
  const std::size_t n = program.num_vars;
  const std::size_t m = program.constraints.size();
  if (program.objective.size() != n) throw std::invalid_argument("lp: objective size mismatch");

  std::size_t slacks = 0, artificials = 0;
  for (const auto& con : program.constraints) {
    for (const auto& t : con.terms) {
      if (t.var >= n) throw std::invalid_argument("lp: variable index out of range");
    }
    const bool flip = con.rhs < 0.0;
    Relation rel = con.relation;
    if (flip && rel != Relation::Equal) {
      rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    }
    if (rel != Relation::Equal) ++slacks;
    if (rel != Relation::LessEqual) ++artificials;
  }

  const std::size_t art_begin = n + slacks;
  Tableau t(m, n + slacks + artificials);
  std::size_t next_slack = n, next_art = art_begin;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& con = program.constraints[r];
    const double sign = con.rhs < 0.0 ? -1.0 : 1.0;
    Relation rel = con.relation;
    if (sign < 0.0 && rel != Relation::Equal) {
      rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    }
    for (const auto& term : con.terms) t.at(r, term.var) += sign * term.coeff;
    t.rhs(r) = sign * con.rhs;
    if (rel == Relation::LessEqual) {
      t.at(r, next_slack) = 1.0;
      t.basis()[r] = next_slack++;
    } else {
      if (rel == Relation::GreaterEqual) t.at(r, next_slack++) = -1.0;
      t.at(r, next_art) = 1.0;
      t.basis()[r] = next_art++;
    }
  }

  Solution sol;
  const std::size_t limit = 50 * (t.cols() + m) + 10000;

  // Phase 1: maximise -sum(artificials).
  if (artificials > 0) {
    for (std::size_t c = art_begin; c < t.cols(); ++c) t.obj(c) = 1.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (t.basis()[r] < art_begin) continue;
      for (std::size_t c = 0; c <= t.cols(); ++c) t.obj(c) -= t.at(r, c);
    }
    sol.status = t.optimise(t.cols(), tol, sol.pivots, limit);
    if (sol.status == Status::IterationLimit) return sol;
    double scale = 1.0;
    for (const auto& con : program.constraints) scale = std::max(scale, std::abs(con.rhs));
    if (-t.obj(t.cols()) > std::sqrt(tol) * scale) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis or drop redundant rows.
    for (std::size_t r = t.rows(); r-- > 0;) {
      if (t.basis()[r] < art_begin) continue;
      std::size_t col = kNone;
      for (std::size_t c = 0; c < art_begin; ++c) {
        if (std::abs(t.at(r, c)) > tol) {
          col = c;
          break;
        }
      }
      if (col == kNone) {
        t.drop_row(r);
      } else {
        t.pivot(r, col);
      }
    }
  }

  // Phase 2.
  for (std::size_t c = 0; c <= t.cols(); ++c) t.obj(c) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.obj(j) = -program.objective[j];
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const std::size_t b = t.basis()[r];
    const double cb = b < n ? program.objective[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= t.cols(); ++c) t.obj(c) += cb * t.at(r, c);
  }
  sol.status = t.optimise(art_begin, tol, sol.pivots, limit);
  if (sol.status != Status::Optimal) return sol;

  sol.values.assign(n, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basis()[r] < n) sol.values[t.basis()[r]] = t.rhs(r);
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += program.objective[j] * sol.values[j];
  return sol;
}

}  // namespace hbc::lp
