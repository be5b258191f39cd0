#include "krlip/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "krlip/error.hpp"

namespace krlip {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
}

void require_field(const FiniteMetricSpace& space, const ScalarField& f) {
  if (f.size() != space.size()) {
    throw Error(ErrorCode::SizeMismatch, "field has " + std::to_string(f.size()) +
                                             " values for a space of " +
                                             std::to_string(space.size()) + " points");
  }
}

// pow(d, 1) is exact, but skipping the call keeps the alpha = 1 path bitwise
// identical to plain division in the operator scan.
inline double scaled_distance(double d, double alpha) { return alpha == 1.0 ? d : std::pow(d, alpha); }

inline double quotient(const FiniteMetricSpace& space, const ScalarField& f, std::size_t x,
                       std::size_t y, double alpha) {
  return std::abs(f[x] - f[y]) / scaled_distance(space(x, y), alpha);
}

// Largest double v on the side `dir` of `anchor` whose quotient against the
// anchor, evaluated as holder_seminorm does, stays within L.
double reach(double anchor, double d, double L, double dir) {
  if (!std::isfinite(anchor + dir * L * d)) return anchor + dir * L * d;
  const auto fits = [&](double v) { return std::abs(v - anchor) / d <= L; };
  const double toward = dir > 0 ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity();
  double v = anchor + dir * L * d;
  while (!fits(v)) v = std::nextafter(v, anchor);
  for (double next = std::nextafter(v, toward); fits(next); next = std::nextafter(v, toward)) v = next;
  return v;
}

}  // namespace

double sup_norm(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.value) s = std::max(s, std::abs(v));
  return s;
}

double holder_seminorm(const FiniteMetricSpace& space, const ScalarField& f, double alpha) {
  require_alpha(alpha);
  require_field(space, f);
  double best = 0.0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t y = x + 1; y < space.size(); ++y) best = std::max(best, quotient(space, f, x, y, alpha));
  }
  return best;
}

double holder_norm(const FiniteMetricSpace& space, const ScalarField& f, double alpha) {
  return std::max(holder_seminorm(space, f, alpha), sup_norm(f));
}

double lip_modulus(const FiniteMetricSpace& space, const ScalarField& f, double alpha, double delta) {
  require_alpha(alpha);
  require_field(space, f);
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  double best = 0.0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    const auto row = space.row(x);
    for (std::size_t y = x + 1; y < space.size(); ++y) {
      if (row[y] <= delta) best = std::max(best, quotient(space, f, x, y, alpha));
    }
  }
  return best;
}

ModulusProfile dist_to_little_lip(const FiniteMetricSpace& space, const ScalarField& f, double alpha,
                                  std::span<const double> schedule) {
  require_alpha(alpha);
  require_field(space, f);
  if (schedule.empty()) throw Error(ErrorCode::EmptySchedule, "delta schedule is empty");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] > 0.0) || (k > 0 && !(schedule[k] < schedule[k - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "delta schedule must be positive and strictly decreasing");
    }
  }
  // A pair at distance d counts for every delta >= d, a prefix of the schedule.
  // Record its quotient at the last such index, then take suffix maxima.
  std::vector<double> bucket(schedule.size(), 0.0);
  for (std::size_t x = 0; x < space.size(); ++x) {
    const auto row = space.row(x);
    for (std::size_t y = x + 1; y < space.size(); ++y) {
      const double d = row[y];
      if (d > schedule.front()) continue;
      const auto it = std::partition_point(schedule.begin(), schedule.end(),
                                           [d](double delta) { return delta >= d; });
      const std::size_t last = static_cast<std::size_t>(it - schedule.begin()) - 1;
      bucket[last] = std::max(bucket[last], quotient(space, f, x, y, alpha));
    }
  }
  ModulusProfile profile;
  profile.deltas.assign(schedule.begin(), schedule.end());
  profile.omega.assign(schedule.size(), 0.0);
  double running = 0.0;
  for (std::size_t k = schedule.size(); k-- > 0;) {
    running = std::max(running, bucket[k]);
    profile.omega[k] = running;
  }
  return profile;
}

std::pair<double, double> operator_eval(const FiniteMetricSpace& space, const ScalarField& f,
                                        OperatorIndex idx) {
  require_field(space, f);
  const std::size_t n = space.size();
  if (!(space.diam() > 0.0)) throw Error(ErrorCode::DegenerateDiameter, "space has zero diameter");
  if (idx.x >= n || idx.y >= n || idx.z >= n) throw Error(ErrorCode::UnknownPoint, "index out of range");
  if (idx.x == idx.y) throw Error(ErrorCode::InvalidArgument, "operator index needs x != y");
  const double rho = space(idx.x, idx.y);
  return {(f[idx.x] - f[idx.y]) / rho, (rho / space.diam()) * f[idx.z]};
}

double operator_sup(const FiniteMetricSpace& space, const ScalarField& f) {
  require_field(space, f);
  const std::size_t n = space.size();
  if (n < 2) throw Error(ErrorCode::DegenerateDiameter, "operator family needs two points");
  double best = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      for (std::size_t z = 0; z < n; ++z) {
        const auto [a, b] = operator_eval(space, f, {x, y, z});
        best = std::max({best, std::abs(a), std::abs(b)});
      }
    }
  }
  return best;
}

double restricted_lipschitz_constant(const FiniteMetricSpace& space, const ScalarField& f,
                                     std::span<const std::size_t> subset) {
  require_field(space, f);
  double best = 0.0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      if (subset[i] != subset[j]) best = std::max(best, quotient(space, f, subset[i], subset[j], 1.0));
    }
  }
  return best;
}

ScalarField extend_lipschitz(const FiniteMetricSpace& space, std::span<const std::size_t> subset,
                             std::span<const double> values, double L) {
  const std::size_t n = space.size();
  if (subset.empty()) throw Error(ErrorCode::InvalidArgument, "extension subset is empty");
  if (subset.size() != values.size()) {
    throw Error(ErrorCode::SizeMismatch, "subset and values differ in length");
  }
  std::vector<double> given(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> in_subset(n, false);
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const std::size_t a = subset[k];
    if (a >= n) throw Error(ErrorCode::UnknownPoint, "subset index " + std::to_string(a) + " out of range");
    if (in_subset[a] && given[a] != values[k]) {
      throw Error(ErrorCode::InvalidArgument, "conflicting values for point " + std::to_string(a));
    }
    in_subset[a] = true;
    given[a] = values[k];
  }
  ScalarField known(given);
  const double needed = restricted_lipschitz_constant(space, known, subset);
  if (L < needed) {
    throw Error(ErrorCode::ConstantTooSmall, "L = " + std::to_string(L) +
                                                 " is below the data's Lipschitz constant " +
                                                 std::to_string(needed));
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  // Upper McShane envelope as a shortest-path fixpoint. Each relaxation takes
  // the largest double whose quotient against the settled partner, evaluated
  // as holder_seminorm does, stays within L. Settling in increasing order
  // yields the greatest floating solution below the data, so whenever such a
  // solution exists the rounded result obeys [g]_1 <= L bitwise.
  std::vector<double> v(given);
  std::vector<bool> settled(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    if (!in_subset[x]) v[x] = std::numeric_limits<double>::infinity();
  }
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t y = n;
    for (std::size_t x = 0; x < n; ++x) {
      if (!settled[x] && (y == n || v[x] < v[y])) y = x;
    }
    settled[y] = true;
    for (std::size_t x = 0; x < n; ++x) {
      if (!settled[x] && !in_subset[x]) v[x] = std::min(v[x], reach(v[y], space(x, y), L, 1.0));
    }
  }
  ScalarField g(std::move(v));
  for (std::size_t x = 0; x < n; ++x) {
    if (!in_subset[x]) g.value[x] = std::clamp(g[x], lo, hi);
  }
  const double excess = holder_seminorm(space, g, 1.0) - L;
  if (excess <= 0.0) return g;
  // No floating assignment fits; the direct formula then stays closer.
  ScalarField direct = ScalarField::constant(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    if (in_subset[x]) {
      direct.value[x] = given[x];
      continue;
    }
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < subset.size(); ++k) {
      upper = std::min(upper, values[k] + L * space(x, subset[k]));
    }
    direct.value[x] = std::clamp(upper, lo, hi);
  }
  return holder_seminorm(space, direct, 1.0) - L < excess ? direct : g;
}

AssumptionHReport assumption_h_report(const FiniteMetricSpace& space, const ScalarField& f,
                                      double alpha, std::span<const std::size_t> subset, double C) {
  require_alpha(alpha);
  require_field(space, f);
  if (subset.empty()) throw Error(ErrorCode::InvalidArgument, "subset is empty");
  if (!(C > 1.0)) throw Error(ErrorCode::InvalidArgument, "C must exceed 1");
  AssumptionHReport r;
  r.C = C;
  r.lipschitz_constant = restricted_lipschitz_constant(space, f, subset);
  std::vector<double> values;
  values.reserve(subset.size());
  for (std::size_t a : subset) {
    if (a >= space.size()) throw Error(ErrorCode::UnknownPoint, "subset index out of range");
    values.push_back(f[a]);
  }
  r.extension = extend_lipschitz(space, subset, values, r.lipschitz_constant);
  r.norm_f = holder_norm(space, f, alpha);
  r.norm_g = holder_norm(space, r.extension, alpha);
  r.ratio = r.norm_f > 0.0 ? r.norm_g / r.norm_f : 0.0;
  r.holds = r.ratio <= C;
  const double seminorm_f = holder_seminorm(space, f, alpha);
  r.pointwise_ok = true;
  for (std::size_t x = 0; x < space.size(); ++x) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t a : subset) d = std::min(d, space(x, a));
    const double bound = seminorm_f * scaled_distance(d, alpha) + r.lipschitz_constant * d;
    const double err = std::abs(f[x] - r.extension[x]);
    r.pointwise_bound = std::max(r.pointwise_bound, bound);
    r.max_pointwise_error = std::max(r.max_pointwise_error, err);
    if (err > bound + 1e-12 * (1.0 + bound)) r.pointwise_ok = false;
  }
  return r;
}

}  // namespace krlip
