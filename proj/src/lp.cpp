#include "krlip/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krlip/error.hpp"

namespace krlip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// How a user variable maps onto nonnegative standard-form columns.
struct ColumnMap {
  enum Kind { Shifted, Reflected, Split } kind = Shifted;
  std::size_t first = 0;  // standard-form column (Split uses first and first+1)
  double offset = 0.0;    // lower bound for Shifted, upper bound for Reflected
};

struct StandardForm {
  std::vector<std::vector<double>> rows;  // m x n, over nonnegative columns
  std::vector<Sense> senses;
  std::vector<double> rhs;
  std::vector<double> cost;
  std::vector<ColumnMap> map;
  std::size_t user_rows = 0;
};

StandardForm to_standard_form(const LPProblem& p) {
  StandardForm sf;
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  sf.user_rows = m;
  sf.map.resize(n);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const VariableBounds b = p.bounds.empty() ? VariableBounds{} : p.bounds[j];
    ColumnMap& c = sf.map[j];
    c.first = cols;
    if (std::isfinite(b.lower)) {
      c.kind = ColumnMap::Shifted;
      c.offset = b.lower;
      cols += 1;
    } else if (std::isfinite(b.upper)) {
      c.kind = ColumnMap::Reflected;
      c.offset = b.upper;
      cols += 1;
    } else {
      c.kind = ColumnMap::Split;
      cols += 2;
    }
  }
  sf.cost.assign(cols, 0.0);
  sf.rows.assign(m, std::vector<double>(cols, 0.0));
  sf.senses = p.senses;
  sf.rhs = p.rhs;
  for (std::size_t j = 0; j < n; ++j) {
    const ColumnMap& c = sf.map[j];
    const double cj = p.objective[j];
    switch (c.kind) {
      case ColumnMap::Shifted: sf.cost[c.first] = cj; break;
      case ColumnMap::Reflected: sf.cost[c.first] = -cj; break;
      case ColumnMap::Split:
        sf.cost[c.first] = cj;
        sf.cost[c.first + 1] = -cj;
        break;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double a = p.rows[i][j];
      if (a == 0.0) continue;
      switch (c.kind) {
        case ColumnMap::Shifted:
          sf.rows[i][c.first] = a;
          sf.rhs[i] -= a * c.offset;
          break;
        case ColumnMap::Reflected:
          sf.rows[i][c.first] = -a;
          sf.rhs[i] -= a * c.offset;
          break;
        case ColumnMap::Split:
          sf.rows[i][c.first] = a;
          sf.rows[i][c.first + 1] = -a;
          break;
      }
    }
  }
  // Finite upper bounds on shifted columns become explicit rows.
  for (std::size_t j = 0; j < n; ++j) {
    const VariableBounds b = p.bounds.empty() ? VariableBounds{} : p.bounds[j];
    const ColumnMap& c = sf.map[j];
    if (c.kind == ColumnMap::Shifted && std::isfinite(b.upper)) {
      std::vector<double> row(cols, 0.0);
      row[c.first] = 1.0;
      sf.rows.push_back(std::move(row));
      sf.senses.push_back(Sense::LessEqual);
      sf.rhs.push_back(b.upper - b.lower);
    }
  }
  return sf;
}

// Dense tableau over [structural | slack/surplus | artificial] columns.
class Tableau {
 public:
  Tableau(const StandardForm& sf, double tol, std::size_t max_iter)
      : m_(sf.rows.size()), n_(sf.cost.size()), tol_(tol), max_iter_(max_iter) {
    flip_.assign(m_, 1.0);
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    std::vector<Sense> senses(sf.senses);
    for (std::size_t i = 0; i < m_; ++i) {
      if (sf.rhs[i] < 0.0) {
        flip_[i] = -1.0;
        if (senses[i] == Sense::LessEqual) {
          senses[i] = Sense::GreaterEqual;
        } else if (senses[i] == Sense::GreaterEqual) {
          senses[i] = Sense::LessEqual;
        }
      }
      if (senses[i] != Sense::Equal) ++slacks;
      if (senses[i] != Sense::LessEqual) ++artificials;
    }
    first_art_ = n_ + slacks;
    cols_ = first_art_ + artificials;
    width_ = cols_ + 1;
    t_.assign((m_ + 1) * width_, 0.0);
    basis_.assign(m_, 0);
    unit_col_.assign(m_, 0);
    std::size_t next_slack = n_;
    std::size_t next_art = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = flip_[i] * sf.rows[i][j];
      at(i, cols_) = flip_[i] * sf.rhs[i];
      if (senses[i] == Sense::LessEqual) {
        at(i, next_slack) = 1.0;
        basis_[i] = unit_col_[i] = next_slack++;
      } else {
        if (senses[i] == Sense::GreaterEqual) at(i, next_slack++) = -1.0;
        at(i, next_art) = 1.0;
        basis_[i] = unit_col_[i] = next_art++;
      }
    }
    rhs_scale_ = 1.0;
    for (std::size_t i = 0; i < m_; ++i) rhs_scale_ = std::max(rhs_scale_, std::abs(at(i, cols_)));
  }

  std::size_t iterations() const noexcept { return iterations_; }

  void phase_one() {
    if (first_art_ == cols_) return;
    for (std::size_t j = 0; j <= cols_; ++j) obj(j) = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (j < first_art_ || j == cols_) obj(j) -= at(i, j);
      }
    }
    run(first_art_);
    const double infeasibility = -obj(cols_);
    if (infeasibility > tol_ * rhs_scale_) {
      throw Error(ErrorCode::Infeasible,
                  "phase one ended with infeasibility " + std::to_string(infeasibility));
    }
    // Pivot remaining zero-level artificials out where a structural entry allows.
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      std::size_t best = cols_;
      double best_abs = tol_;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (std::abs(at(i, j)) > best_abs) {
          best_abs = std::abs(at(i, j));
          best = j;
        }
      }
      if (best != cols_) pivot(i, best);
    }
  }

  void phase_two(const std::vector<double>& cost) {
    for (std::size_t j = 0; j <= cols_; ++j) obj(j) = j < n_ ? cost[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost_of(cost, basis_[i]);
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) obj(j) -= cb * at(i, j);
    }
    run(first_art_);
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, at(i, cols_));
    }
    return x;
  }

  /// Dual multipliers in the caller's row orientation.
  std::vector<double> dual() const {
    std::vector<double> y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = -flip_[i] * obj(unit_col_[i]);
    return y;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  double& obj(std::size_t j) { return t_[m_ * width_ + j]; }
  double obj(std::size_t j) const { return t_[m_ * width_ + j]; }
  double cost_of(const std::vector<double>& cost, std::size_t col) const {
    return col < n_ ? cost[col] : 0.0;
  }

  // Bland's rule: lowest-index improving column enters; among minimum-ratio
  // rows the lowest-index basic variable leaves.
  void run(std::size_t allowed_cols) {
    for (;;) {
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (obj(j) < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter == allowed_cols) return;
      std::size_t leave = m_;
      double best_ratio = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= tol_) continue;
        const double ratio = at(i, cols_) / a;
        if (leave == m_) {
          leave = i;
          best_ratio = ratio;
          continue;
        }
        const double slack = 1e-12 * (1.0 + std::abs(best_ratio));
        if (ratio < best_ratio - slack) {
          leave = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + slack && basis_[i] < basis_[leave]) {
          leave = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave == m_) {
        throw Error(ErrorCode::Unbounded, "column " + std::to_string(enter) + " has no bounding row");
      }
      if (++iterations_ > max_iter_) {
        throw Error(ErrorCode::IterationLimit,
                    "exceeded " + std::to_string(max_iter_) + " simplex iterations");
      }
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    const double inv = 1.0 / at(r, e);
    double* prow = &t_[r * width_];
    for (std::size_t j = 0; j <= cols_; ++j) prow[j] *= inv;
    prow[e] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* row = &t_[i * width_];
      const double f = row[e];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (prow[j] != 0.0) row[j] -= f * prow[j];
      }
      row[e] = 0.0;
      if (i < m_ && row[cols_] < 0.0 && row[cols_] > -tol_) row[cols_] = 0.0;
    }
    basis_[r] = e;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t cols_ = 0;
  std::size_t first_art_ = 0;
  std::size_t width_ = 0;
  double tol_;
  std::size_t max_iter_;
  std::size_t iterations_ = 0;
  double rhs_scale_ = 1.0;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> unit_col_;
  std::vector<double> flip_;
};

}  // namespace

void LPProblem::add_row(std::vector<double> coefficients, Sense sense, double value) {
  rows.push_back(std::move(coefficients));
  senses.push_back(sense);
  rhs.push_back(value);
}

void LPProblem::check() const {
  const std::size_t n = num_vars();
  if (senses.size() != rows.size() || rhs.size() != rows.size()) {
    throw Error(ErrorCode::SizeMismatch, "rows, senses and rhs differ in length");
  }
  for (const auto& r : rows) {
    if (r.size() != n) throw Error(ErrorCode::SizeMismatch, "constraint row width != variable count");
  }
  if (!bounds.empty() && bounds.size() != n) {
    throw Error(ErrorCode::SizeMismatch, "bounds length != variable count");
  }
  for (const auto& b : bounds) {
    if (b.lower > b.upper) throw Error(ErrorCode::Infeasible, "variable with lower > upper bound");
  }
}

LPSolution solve_lp(const LPProblem& problem, const SimplexOptions& options) {
  problem.check();
  const StandardForm sf = to_standard_form(problem);
  const std::size_t m = sf.rows.size();
  const std::size_t max_iter =
      options.max_iterations != 0 ? options.max_iterations : 100000 + 50 * (m + sf.cost.size());

  Tableau tab(sf, options.tolerance, max_iter);
  tab.phase_one();
  tab.phase_two(sf.cost);

  const std::vector<double> xs = tab.primal();
  const std::vector<double> ys = tab.dual();

  LPSolution sol;
  sol.iterations = tab.iterations();
  const std::size_t n = problem.num_vars();
  sol.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const ColumnMap& c = sf.map[j];
    switch (c.kind) {
      case ColumnMap::Shifted: sol.x[j] = c.offset + xs[c.first]; break;
      case ColumnMap::Reflected: sol.x[j] = c.offset - xs[c.first]; break;
      case ColumnMap::Split: sol.x[j] = xs[c.first] - xs[c.first + 1]; break;
    }
  }
  sol.dual.assign(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(sf.user_rows));
  sol.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.x[j];

  // Certificate residuals against the caller's formulation.
  for (std::size_t i = 0; i < problem.num_rows(); ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) ax += problem.rows[i][j] * sol.x[j];
    const double s = ax - problem.rhs[i];
    const double y = sol.dual[i];
    switch (problem.senses[i]) {
      case Sense::LessEqual:
        sol.primal_residual = std::max(sol.primal_residual, s);
        sol.dual_residual = std::max(sol.dual_residual, y);
        break;
      case Sense::GreaterEqual:
        sol.primal_residual = std::max(sol.primal_residual, -s);
        sol.dual_residual = std::max(sol.dual_residual, -y);
        break;
      case Sense::Equal: sol.primal_residual = std::max(sol.primal_residual, std::abs(s)); break;
    }
    if (problem.senses[i] != Sense::Equal) {
      sol.complementarity = std::max(sol.complementarity, std::abs(y * s));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const VariableBounds b = problem.bounds.empty() ? VariableBounds{} : problem.bounds[j];
    double d = problem.objective[j];
    for (std::size_t i = 0; i < problem.num_rows(); ++i) d -= problem.rows[i][j] * sol.dual[i];
    const double x = sol.x[j];
    sol.primal_residual = std::max({sol.primal_residual, b.lower - x, x - b.upper});
    // Positive reduced cost must sit at a finite lower bound, negative at an upper.
    if (d > 0.0) {
      if (std::isfinite(b.lower)) {
        sol.complementarity = std::max(sol.complementarity, d * (x - b.lower));
      } else {
        sol.dual_residual = std::max(sol.dual_residual, d);
      }
    } else if (d < 0.0) {
      if (std::isfinite(b.upper)) {
        sol.complementarity = std::max(sol.complementarity, -d * (b.upper - x));
      } else {
        sol.dual_residual = std::max(sol.dual_residual, -d);
      }
    }
  }
  return sol;
}

}  // namespace krlip
