#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace krlip {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct VariableBounds {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

/// minimize objective . x  subject to  rows[i] . x (senses[i]) rhs[i],  bounds.
/// An empty `bounds` means x >= 0 componentwise.
struct LPProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<Sense> senses;
  std::vector<double> rhs;
  std::vector<VariableBounds> bounds;

  std::size_t num_vars() const noexcept { return objective.size(); }
  std::size_t num_rows() const noexcept { return rows.size(); }

  /// Appends a constraint row.
  void add_row(std::vector<double> coefficients, Sense sense, double value);

  /// Throws SizeMismatch / InvalidArgument on inconsistent dimensions.
  void check() const;
};

struct SimplexOptions {
  double tolerance = 1e-9;
  std::size_t max_iterations = 0;  // 0: scale with problem size
};

struct LPSolution {
  double value = 0.0;
  std::vector<double> x;
  // Row multipliers y with objective - A^T y sign-feasible for the bounds:
  // y <= 0 on <= rows, y >= 0 on >= rows, free on equalities.
  std::vector<double> dual;
  std::size_t iterations = 0;
  double primal_residual = 0.0;   // worst row/bound violation
  double dual_residual = 0.0;     // worst dual sign violation
  double complementarity = 0.0;   // worst |multiplier * slack|
};

/// Dense two-phase primal simplex using Bland's rule.
/// Throws Error{Infeasible | Unbounded | IterationLimit}.
LPSolution solve_lp(const LPProblem& problem, const SimplexOptions& options = {});

}  // namespace krlip
