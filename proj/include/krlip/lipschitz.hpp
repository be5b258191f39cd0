#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "krlip/field.hpp"
#include "krlip/metric.hpp"

namespace krlip {

/// sup over distinct pairs of |f(x) - f(y)| / rho(x,y)^alpha; 0 on singletons.
double holder_seminorm(const FiniteMetricSpace& space, const ScalarField& f, double alpha);

/// max(holder_seminorm, sup |f|)
double holder_norm(const FiniteMetricSpace& space, const ScalarField& f, double alpha);

double sup_norm(const ScalarField& f);

/// Hölder quotient restricted to pairs with 0 < rho(x,y) <= delta.
double lip_modulus(const FiniteMetricSpace& space, const ScalarField& f, double alpha, double delta);

struct ModulusProfile {
  std::vector<double> deltas;  // strictly decreasing
  std::vector<double> omega;   // lip_modulus at each delta

  /// Distance-to-little-Lipschitz estimate: the modulus at the finest scale.
  double estimate() const { return omega.empty() ? 0.0 : omega.back(); }
};

ModulusProfile dist_to_little_lip(const FiniteMetricSpace& space, const ScalarField& f, double alpha,
                                  std::span<const double> schedule);

/// Index of one operator of the family: a pair x != y plus an evaluation point z.
struct OperatorIndex {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t z = 0;
};

/// L_{x,y,z} f = ((f(x) - f(y)) / rho(x,y), rho(x,y) f(z) / diam).
std::pair<double, double> operator_eval(const FiniteMetricSpace& space, const ScalarField& f,
                                        OperatorIndex idx);

/// Max over the whole family of max(|first|, |second|), by exhaustive scan.
double operator_sup(const FiniteMetricSpace& space, const ScalarField& f);

/// Clamped McShane extension of the values fA on the subset A with constant L.
/// Free values are then lowered by ulps so the evaluated [g]_1 stays within L
/// whenever some floating assignment allows it; otherwise the plain formula
/// is returned.
ScalarField extend_lipschitz(const FiniteMetricSpace& space, std::span<const std::size_t> subset,
                             std::span<const double> values, double L);

/// Lipschitz constant (w.r.t. rho) of the restriction of f to a subset.
double restricted_lipschitz_constant(const FiniteMetricSpace& space, const ScalarField& f,
                                     std::span<const std::size_t> subset);

struct AssumptionHReport {
  ScalarField extension;
  double lipschitz_constant = 0.0;  // L used for the extension
  double norm_f = 0.0;              // ||f||_alpha
  double norm_g = 0.0;              // ||g||_alpha
  double ratio = 0.0;               // norm_g / norm_f (0 when both vanish)
  double C = 0.0;
  bool holds = false;               // ratio <= C
  double max_pointwise_error = 0.0;  // sup |f - g|
  double pointwise_bound = 0.0;      // sup_x [f]_alpha d(x,A)^alpha + L d(x,A)
  bool pointwise_ok = false;
};

AssumptionHReport assumption_h_report(const FiniteMetricSpace& space, const ScalarField& f,
                                      double alpha, std::span<const std::size_t> subset, double C);

}  // namespace krlip
