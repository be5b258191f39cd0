#include "krlip/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "krlip/numeric.hpp"

namespace krlip {

namespace {

// Column layout: all ordered pairs (x, y), x != y, row-major in x; then, for
// the general norm, r+ per point and r- per point.
struct PairIndex {
  std::size_t n;
  std::size_t count() const { return n * (n - 1); }
  std::size_t operator()(std::size_t x, std::size_t y) const {
    return x * (n - 1) + (y < x ? y : y - 1);
  }
};

LPProblem balance_lp(const FiniteMetricSpace& space, const SignedMeasure& mu, bool with_residual) {
  const std::size_t n = space.size();
  const PairIndex pairs{n};
  const std::size_t arc_vars = pairs.count();
  const std::size_t vars = arc_vars + (with_residual ? 2 * n : 0);
  LPProblem lp;
  lp.objective.assign(vars, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y) lp.objective[pairs(x, y)] = space(x, y);
    }
  }
  if (with_residual) {
    for (std::size_t k = arc_vars; k < vars; ++k) lp.objective[k] = 1.0;
  }
  for (std::size_t f = 0; f < n; ++f) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
      if (x == f) continue;
      row[pairs(x, f)] += 1.0;  // inflow
      row[pairs(f, x)] -= 1.0;  // outflow
    }
    if (with_residual) {
      row[arc_vars + f] = 1.0;
      row[arc_vars + n + f] = -1.0;
    }
    lp.add_row(std::move(row), Sense::Equal, mu[f]);
  }
  return lp;
}

KRResult finish(const FiniteMetricSpace& space, const SignedMeasure& mu, const LPSolution& sol,
                bool with_residual) {
  const std::size_t n = space.size();
  const PairIndex pairs{n};
  KRResult out;
  out.iterations = sol.iterations;
  out.primal_value = sol.value;
  out.plan.points = n;
  const double noise = 1e-14 * (1.0 + mu.tv());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const double m = sol.x[pairs(x, y)];
      if (m > noise) out.plan.arcs.push_back({x, y, m});
    }
  }
  out.residual = mu - out.plan.induced();
  for (double& r : out.residual.mass) {
    if (std::abs(r) <= noise) r = 0.0;
  }
  // Report the cost of the certificate actually returned, so that anything
  // built from this plan and residual sums to the same value.
  std::vector<double> terms;
  for (const Arc& a : out.plan.arcs) terms.push_back(a.mass * space(a.from, a.to));
  for (double r : out.residual.mass) {
    if (r != 0.0) terms.push_back(std::abs(r));
  }
  out.primal_value = ordered_sum(std::move(terms));
  out.potential = ScalarField(sol.dual);
  if (!with_residual && n > 0) {
    // Potentials of the balanced problem are defined up to a constant.
    const double shift = out.potential.value[0];
    for (double& f : out.potential.value) f -= shift;
  }
  double dual = 0.0;
  for (std::size_t i = 0; i < n; ++i) dual += out.potential[i] * mu[i];
  out.dual_value = dual;
  out.gap = std::abs(out.primal_value - out.dual_value);
  double worst = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y) worst = std::max(worst, out.potential[y] - out.potential[x] - space(x, y));
    }
    if (with_residual) worst = std::max(worst, std::abs(out.potential[x]) - 1.0);
  }
  out.potential_violation = worst;
  return out;
}

}  // namespace

SignedMeasure TransportPlan::induced() const {
  SignedMeasure m = SignedMeasure::zero(points);
  for (const Arc& a : arcs) {
    m.mass[a.to] += a.mass;
    m.mass[a.from] -= a.mass;
  }
  return m;
}

double TransportPlan::cost(const FiniteMetricSpace& space) const {
  double c = 0.0;
  for (const Arc& a : arcs) c += a.mass * space(a.from, a.to);
  return c;
}

KRResult kr0_norm(const FiniteMetricSpace& space, const SignedMeasure& nu) {
  require_on_space(space, nu);
  if (!is_balanced(nu, kBalanceTolerance * (1.0 + nu.tv()))) {
    throw Error(ErrorCode::NotBalanced, "total mass " + std::to_string(nu.total()) + " is not zero");
  }
  if (space.size() == 1) {
    KRResult out;
    out.plan.points = 1;
    out.residual = nu;
    out.potential = ScalarField::constant(1, 0.0);
    return out;
  }
  const LPSolution sol = solve_lp(balance_lp(space, nu, false));
  return finish(space, nu, sol, false);
}

KRResult kr_norm(const FiniteMetricSpace& space, const SignedMeasure& mu) {
  require_on_space(space, mu);
  const LPSolution sol = solve_lp(balance_lp(space, mu, true));
  return finish(space, mu, sol, true);
}

double restricted_plan_norm(const FiniteMetricSpace& space, const SignedMeasure& nu) {
  require_on_space(space, nu);
  if (!is_balanced(nu, kBalanceTolerance * (1.0 + nu.tv()))) {
    throw Error(ErrorCode::NotBalanced, "total mass " + std::to_string(nu.total()) + " is not zero");
  }
  std::vector<std::size_t> sources;
  std::vector<std::size_t> sinks;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] < 0.0) sources.push_back(i);
    if (nu[i] > 0.0) sinks.push_back(i);
  }
  if (sources.empty() || sinks.empty()) return 0.0;
  const std::size_t vars = sources.size() * sinks.size();
  LPProblem lp;
  lp.objective.resize(vars);
  for (std::size_t a = 0; a < sources.size(); ++a) {
    for (std::size_t b = 0; b < sinks.size(); ++b) {
      lp.objective[a * sinks.size() + b] = space(sources[a], sinks[b]);
    }
  }
  for (std::size_t a = 0; a < sources.size(); ++a) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t b = 0; b < sinks.size(); ++b) row[a * sinks.size() + b] = 1.0;
    lp.add_row(std::move(row), Sense::Equal, -nu[sources[a]]);
  }
  for (std::size_t b = 0; b < sinks.size(); ++b) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t a = 0; a < sources.size(); ++a) row[a * sinks.size() + b] = 1.0;
    lp.add_row(std::move(row), Sense::Equal, nu[sinks[b]]);
  }
  return solve_lp(lp).value;
}

std::vector<BatchOutcome> kr_batch(const FiniteMetricSpace& space,
                                   std::span<const SignedMeasure> measures, unsigned jobs) {
  std::vector<BatchOutcome> out(measures.size());
  auto solve_one = [&](std::size_t i) {
    try {
      out[i].result = kr_norm(space, measures[i]);
    } catch (const Error& e) {
      out[i].error = e.code();
      out[i].detail = e.detail();
    }
  };
  const std::size_t workers = std::min<std::size_t>(std::max(1U, jobs), measures.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < measures.size(); ++i) solve_one(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < measures.size(); i = next++) solve_one(i);
      });
    }
  }
  return out;
}

}  // namespace krlip
