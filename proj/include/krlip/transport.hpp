#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "krlip/error.hpp"
#include "krlip/field.hpp"
#include "krlip/lp.hpp"
#include "krlip/measure.hpp"
#include "krlip/metric.hpp"

namespace krlip {

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  double mass = 0.0;
};

/// Nonnegative mass moved along ordered pairs; only positive arcs are stored,
/// sorted by (from, to).
struct TransportPlan {
  std::size_t points = 0;
  std::vector<Arc> arcs;

  /// inflow - outflow at every point: the measure this plan balances.
  SignedMeasure induced() const;
  double cost(const FiniteMetricSpace& space) const;
};

struct KRResult {
  double primal_value = 0.0;
  TransportPlan plan;
  SignedMeasure residual;  // mu - induced(plan); zero for the balanced norm
  double dual_value = 0.0;
  ScalarField potential;
  double gap = 0.0;
  double potential_violation = 0.0;  // worst excess over the dual constraints
  std::size_t iterations = 0;
};

/// Relative tolerance for |primal - dual| and cross-route comparisons.
inline constexpr double kDualityTolerance = 1e-8;
inline constexpr double kBalanceTolerance = 1e-9;

inline bool within_relative(double a, double b, double tol) {
  const double scale = 1.0 + (a < 0 ? -a : a);
  const double diff = a > b ? a - b : b - a;
  return diff <= tol * scale;
}

/// Transport norm of a balanced measure: cheapest plan satisfying the
/// balance condition, with a Lipschitz potential as dual certificate.
KRResult kr0_norm(const FiniteMetricSpace& space, const SignedMeasure& nu);

/// Full norm: transport of a balanced part plus total variation of the rest,
/// certified by a potential with Lipschitz constant and sup-norm at most 1.
KRResult kr_norm(const FiniteMetricSpace& space, const SignedMeasure& mu);

/// Classic fixed-marginal transport from nu_- to nu_+ (no transshipment).
double restricted_plan_norm(const FiniteMetricSpace& space, const SignedMeasure& nu);

struct BatchOutcome {
  std::optional<KRResult> result;
  std::optional<ErrorCode> error;
  std::string detail;

  bool ok() const noexcept { return result.has_value(); }
};

/// Independent kr_norm solves; failures are collected per item. `jobs` > 1
/// spreads items over worker threads.
std::vector<BatchOutcome> kr_batch(const FiniteMetricSpace& space,
                                   std::span<const SignedMeasure> measures, unsigned jobs = 1);

}  // namespace krlip
