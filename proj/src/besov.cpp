#include "krlip/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "krlip/error.hpp"
#include "krlip/lipschitz.hpp"
#include "krlip/lp.hpp"

namespace krlip {

namespace {

void require_field(const MetricMeasureSpace& mm, const ScalarField& f) {
  if (f.size() != mm.size()) {
    throw Error(ErrorCode::SizeMismatch, "field has " + std::to_string(f.size()) +
                                             " values for a space of " + std::to_string(mm.size()) +
                                             " points");
  }
}

void require_smoothness(double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::SOutOfRange, "s must lie in (0, 1], got " + std::to_string(s));
  }
}

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::POutOfRange, "p must be at least 1, got " + std::to_string(p));
  }
}

double lp_energy(const MetricMeasureSpace& mm, const ScalarField& f, double p) {
  double acc = 0.0;
  for (std::size_t x = 0; x < mm.size(); ++x) acc += std::pow(std::abs(f[x]), p) * mm.weight()[x];
  return acc;
}

// Required gradient sum per unordered pair: |f(x)-f(y)| / rho^s.
struct PairDemand {
  std::size_t x;
  std::size_t y;
  double w;
};

std::vector<PairDemand> demands(const MetricMeasureSpace& mm, const ScalarField& f, double s) {
  std::vector<PairDemand> out;
  const auto& space = mm.space();
  for (std::size_t x = 0; x < mm.size(); ++x) {
    for (std::size_t y = x + 1; y < mm.size(); ++y) {
      const double diff = std::abs(f[x] - f[y]);
      if (diff > 0.0) out.push_back({x, y, diff / std::pow(space(x, y), s)});
    }
  }
  return out;
}

// Lowers each coordinate to the least value keeping every pair feasible,
// sweeping until the L^p objective improves by less than 1e-8 relative.
void coordinate_descent(const MetricMeasureSpace& mm, const std::vector<PairDemand>& pairs,
                        std::vector<double>& g, double p) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& d : pairs) {
    adj[d.x].push_back({d.y, d.w});
    adj[d.y].push_back({d.x, d.w});
  }
  ScalarField probe;
  double prev = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < 10000; ++sweep) {
    for (std::size_t x = 0; x < n; ++x) {
      double need = 0.0;
      for (const auto& [y, w] : adj[x]) need = std::max(need, w - g[y]);
      g[x] = need;
    }
    probe.value = g;
    const double obj = lp_energy(mm, probe, p);
    if (prev - obj <= 1e-8 * obj) break;
    prev = obj;
  }
}

// Dual coordinate ascent for  min sum mu g^p  s.t.  g_x + g_y >= w_xy:
// with multipliers lambda, g_x = (Lambda_x / (p mu_x))^(1/(p-1)).
std::vector<double> dual_ascent(const MetricMeasureSpace& mm, const std::vector<PairDemand>& pairs,
                                double p) {
  const std::size_t n = mm.size();
  const auto& mu = mm.weight();
  const double expo = 1.0 / (p - 1.0);
  auto grad_of = [&](std::size_t x, double big_lambda) {
    return big_lambda <= 0.0 ? 0.0 : std::pow(big_lambda / (p * mu[x]), expo);
  };
  std::vector<double> lambda(pairs.size(), 0.0);
  std::vector<double> total(n, 0.0);
  for (int sweep = 0; sweep < 5000; ++sweep) {
    double moved = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& d = pairs[k];
      const double base_x = total[d.x] - lambda[k];
      const double base_y = total[d.y] - lambda[k];
      auto h = [&](double t) { return grad_of(d.x, base_x + t) + grad_of(d.y, base_y + t); };
      // The dual is maximized where the pair becomes tight; a pair that is
      // slack at t = 0 keeps a zero multiplier.
      double t = 0.0;
      if (h(0.0) < d.w) {
        double lo = 0.0;
        double hi = p * std::max(mu[d.x], mu[d.y]) * std::pow(d.w, p - 1.0);
        while (h(hi) < d.w) hi *= 2.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          (h(mid) < d.w ? lo : hi) = mid;
        }
        t = hi;
      }
      t = std::max(0.0, t);
      moved = std::max(moved, std::abs(t - lambda[k]));
      scale = std::max(scale, t);
      total[d.x] = base_x + t;
      total[d.y] = base_y + t;
      lambda[k] = t;
    }
    if (moved <= 1e-12 * (1.0 + scale)) break;
  }
  std::vector<double> g(n);
  for (std::size_t x = 0; x < n; ++x) g[x] = grad_of(x, total[x]);
  // Restore exact feasibility: raising values never breaks another pair.
  for (const auto& d : pairs) {
    const double deficit = d.w - g[d.x] - g[d.y];
    if (deficit > 0.0) {
      g[d.x] += 0.5 * deficit;
      g[d.y] += 0.5 * deficit;
      if (g[d.x] + g[d.y] < d.w) g[d.x] = d.w - g[d.y];
    }
  }
  return g;
}

}  // namespace

void BesovParams::check() const {
  if (!(s > 0.0 && s < 1.0)) throw Error(ErrorCode::SOutOfRange, "s must lie in (0, 1), got " + std::to_string(s));
  require_p(p);
}

double besov_energy(const MetricMeasureSpace& mm, const ScalarField& f, const BesovParams& params) {
  params.check();
  require_field(mm, f);
  const auto& space = mm.space();
  const auto& mu = mm.weight();
  double acc = 0.0;
  for (std::size_t x = 0; x < mm.size(); ++x) {
    for (std::size_t y = 0; y < mm.size(); ++y) {
      if (x == y) continue;
      const double diff = std::abs(f[x] - f[y]);
      if (diff == 0.0) continue;
      const double rho = space(x, y);
      acc += std::pow(diff, params.p) / (std::pow(rho, params.s * params.p) * mm.ball_mass(x, rho)) *
             mu[x] * mu[y];
    }
  }
  return acc;
}

double besov_seminorm(const MetricMeasureSpace& mm, const ScalarField& f, const BesovParams& params) {
  return std::pow(besov_energy(mm, f, params), 1.0 / params.p);
}

double lp_norm(const MetricMeasureSpace& mm, const ScalarField& f, double p) {
  require_p(p);
  require_field(mm, f);
  return std::pow(lp_energy(mm, f, p), 1.0 / p);
}

double besov_norm(const MetricMeasureSpace& mm, const ScalarField& f, const BesovParams& params) {
  return lp_norm(mm, f, params.p) + besov_seminorm(mm, f, params);
}

ClarksonReport clarkson_check(const MetricMeasureSpace& mm, const ScalarField& f, const ScalarField& g,
                              const BesovParams& params) {
  params.check();
  if (!(params.p > 2.0)) {
    throw Error(ErrorCode::POutOfRange, "Clarkson inequality needs p > 2, got " + std::to_string(params.p));
  }
  require_field(mm, f);
  require_field(mm, g);
  auto primed = [&](const ScalarField& h) { return lp_energy(mm, h, params.p) + besov_energy(mm, h, params); };
  ScalarField half_sum = f;
  ScalarField half_diff = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    half_sum.value[i] = (f[i] + g[i]) / 2.0;
    half_diff.value[i] = (f[i] - g[i]) / 2.0;
  }
  ClarksonReport r;
  r.lhs = primed(half_sum) + primed(half_diff);
  r.rhs = 0.5 * (primed(f) + primed(g));
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-12);
  return r;
}

double hajlasz_violation(const MetricMeasureSpace& mm, const ScalarField& f, const ScalarField& g, double s) {
  require_field(mm, f);
  require_field(mm, g);
  const auto& space = mm.space();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < mm.size(); ++x) {
    for (std::size_t y = x + 1; y < mm.size(); ++y) {
      worst = std::max(worst, std::abs(f[x] - f[y]) - std::pow(space(x, y), s) * (g[x] + g[y]));
    }
  }
  return mm.size() < 2 ? 0.0 : worst;
}

HajlaszResult hajlasz_seminorm_p1(const MetricMeasureSpace& mm, const ScalarField& f, double s) {
  require_smoothness(s);
  require_field(mm, f);
  const std::size_t n = mm.size();
  HajlaszResult out;
  out.p = 1.0;
  out.gradient = ScalarField::constant(n, 0.0);
  const std::vector<PairDemand> pairs = demands(mm, f, s);
  if (pairs.empty()) return out;
  // Solved through the dual: maximize sum w lambda subject to, per point,
  // sum of incident lambda <= mu(x). The row multipliers are the gradient.
  // This form starts from a feasible slack basis and has n rows, not n^2.
  LPProblem lp;
  lp.objective.resize(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) lp.objective[k] = -pairs[k].w;
  std::vector<std::vector<double>> rows(n, std::vector<double>(pairs.size(), 0.0));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    rows[pairs[k].x][k] = 1.0;
    rows[pairs[k].y][k] = 1.0;
  }
  for (std::size_t x = 0; x < n; ++x) lp.add_row(std::move(rows[x]), Sense::LessEqual, mm.weight()[x]);
  const LPSolution sol = solve_lp(lp);
  double value = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    out.gradient.value[x] = std::max(0.0, -sol.dual[x]);
    value += out.gradient[x] * mm.weight()[x];
  }
  out.seminorm = value;
  if (value <= 0.0) return out;

  // The optimal gradient is rarely unique. Among the optimal ones take the
  // one with the smallest peak, again through the dual: rows g(x) <= t and
  // sum g mu <= value add columns nu_x and eta.
  LPProblem peak;
  const std::size_t m = pairs.size();
  peak.objective.assign(m + n + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) peak.objective[k] = -pairs[k].w;
  const double budget = value + 1e-12 * (1.0 + value);
  peak.objective[m + n] = budget;
  std::vector<std::vector<double>> prow(n + 1, std::vector<double>(m + n + 1, 0.0));
  for (std::size_t k = 0; k < m; ++k) {
    prow[pairs[k].x][k] = 1.0;
    prow[pairs[k].y][k] = 1.0;
  }
  for (std::size_t x = 0; x < n; ++x) {
    prow[x][m + x] = -1.0;
    prow[x][m + n] = -mm.weight()[x];
    prow[n][m + x] = 1.0;
  }
  for (std::size_t x = 0; x < n; ++x) peak.add_row(std::move(prow[x]), Sense::LessEqual, 0.0);
  peak.add_row(std::move(prow[n]), Sense::LessEqual, 1.0);
  try {
    const LPSolution ps = solve_lp(peak);
    ScalarField g = ScalarField::constant(n, 0.0);
    double g_value = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      g.value[x] = std::max(0.0, -ps.dual[x]);
      g_value += g[x] * mm.weight()[x];
    }
    if (g_value <= budget &&
        hajlasz_violation(mm, f, g, s) <= std::max(0.0, hajlasz_violation(mm, f, out.gradient, s)) + 1e-12) {
      out.gradient = std::move(g);
      out.seminorm = g_value;
    }
  } catch (const Error&) {
    // Keep the vertex from the first solve.
  }
  return out;
}

HajlaszResult hajlasz_upper_bound(const MetricMeasureSpace& mm, const ScalarField& f, double s, double p) {
  require_p(p);
  HajlaszResult lp = hajlasz_seminorm_p1(mm, f, s);
  if (p == 1.0) return lp;
  const std::vector<PairDemand> pairs = demands(mm, f, s);
  HajlaszResult out;
  out.p = p;
  out.upper_bound = true;
  out.gradient = lp.gradient;
  if (pairs.empty()) return out;

  std::vector<double> from_lp = lp.gradient.value;
  coordinate_descent(mm, pairs, from_lp, p);
  std::vector<double> from_dual = dual_ascent(mm, pairs, p);
  coordinate_descent(mm, pairs, from_dual, p);

  const double e_lp = lp_energy(mm, ScalarField(from_lp), p);
  const double e_dual = lp_energy(mm, ScalarField(from_dual), p);
  out.gradient = ScalarField(e_dual <= e_lp ? from_dual : from_lp);
  out.seminorm = std::pow(std::min(e_lp, e_dual), 1.0 / p);
  return out;
}

MorreyReport morrey_check(const MetricMeasureSpace& mm, const ScalarField& f, const HajlaszResult& result,
                          double s, double p, double C, double Q) {
  require_smoothness(s);
  require_p(p);
  require_field(mm, f);
  if (!(p > Q / s)) {
    throw Error(ErrorCode::ExponentViolation,
                "need p > Q/s, got p = " + std::to_string(p) + ", Q/s = " + std::to_string(Q / s));
  }
  const double violation = hajlasz_violation(mm, f, result.gradient, s);
  if (violation > 1e-9) {
    throw Error(ErrorCode::InvalidArgument,
                "gradient is not a Hajłasz gradient (violation " + std::to_string(violation) + ")");
  }
  MorreyReport r;
  r.C = C;
  r.exponent = s - Q / p;
  r.gradient_norm = lp_norm(mm, result.gradient, p);
  const auto& space = mm.space();
  double worst = 0.0;
  for (std::size_t x = 0; x < mm.size(); ++x) {
    for (std::size_t y = x + 1; y < mm.size(); ++y) {
      const double diff = std::abs(f[x] - f[y]);
      if (diff == 0.0) continue;
      if (r.gradient_norm == 0.0) {
        worst = std::numeric_limits<double>::infinity();
        continue;
      }
      worst = std::max(worst, diff / (std::pow(space(x, y), r.exponent) * r.gradient_norm));
    }
  }
  r.c_star = worst;
  r.holds = r.c_star <= C;
  return r;
}

RatioReport linfty_embedding_check(const MetricMeasureSpace& mm, std::span<const ScalarField> fields,
                                   double s, double p, double Q) {
  require_smoothness(s);
  require_p(p);
  if (!(p > Q / s)) {
    throw Error(ErrorCode::ExponentViolation,
                "need p > Q/s, got p = " + std::to_string(p) + ", Q/s = " + std::to_string(Q / s));
  }
  RatioReport r;
  for (const auto& f : fields) {
    const double top = sup_norm(f);
    double ratio = 0.0;
    if (top > 0.0) ratio = top / (lp_norm(mm, f, p) + hajlasz_upper_bound(mm, f, s, p).seminorm);
    r.ratios.push_back(ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  return r;
}

LipBesovReport embedding_ratio_lip_besov(const MetricMeasureSpace& mm, const ScalarField& f,
                                         double alpha, const BesovParams& params) {
  params.check();
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(params.s < alpha)) {
    throw Error(ErrorCode::SOutOfRange, "embedding needs s < alpha, got s = " + std::to_string(params.s));
  }
  require_field(mm, f);
  const auto& space = mm.space();
  const auto& mu = mm.weight();
  const double p = params.p;
  LipBesovReport r;
  r.seminorm = besov_seminorm(mm, f, params);
  r.holder_norm = holder_norm(space, f, alpha);
  r.ratio = r.holder_norm > 0.0 ? r.seminorm / r.holder_norm : 0.0;
  // Near pairs are controlled by the Hölder constant, far ones by 2 sup|f|,
  // both at most 2 ||f||_alpha.
  double k = 0.0;
  for (std::size_t x = 0; x < mm.size(); ++x) {
    for (std::size_t y = 0; y < mm.size(); ++y) {
      if (x == y) continue;
      const double rho = space(x, y);
      const double cap = std::min(std::pow(rho, alpha), 2.0);
      k += std::pow(cap, p) / (std::pow(rho, params.s * p) * mm.ball_mass(x, rho)) * mu[x] * mu[y];
    }
  }
  r.ceiling = std::pow(k, 1.0 / p);
  const double D = space.diam();
  if (D > 0.0) {
    const double near = std::pow(D, (alpha - params.s) * p) / ((alpha - params.s) * p);
    const double far = 2.0 * std::pow(D, -params.s * p) / (params.s * p);
    r.integral_ceiling = std::pow(near + far, 1.0 / p);
  }
  r.holds = r.ratio <= 1.1 * r.ceiling;
  return r;
}

RatioReport besov_to_hajlasz_check(const MetricMeasureSpace& mm, std::span<const ScalarField> fields,
                                   double s, double p) {
  const BesovParams params{s, p};
  params.check();
  RatioReport r;
  for (const auto& f : fields) {
    const double besov = besov_seminorm(mm, f, params);
    const double hajlasz = hajlasz_upper_bound(mm, f, s, p).seminorm;
    const double ratio = besov > 0.0 ? hajlasz / besov : 0.0;
    r.ratios.push_back(ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  return r;
}

}  // namespace krlip
