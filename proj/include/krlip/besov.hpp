#pragma once

#include <span>
#include <vector>

#include "krlip/field.hpp"
#include "krlip/metric.hpp"

namespace krlip {

/// Smoothness s in (0,1) and integrability p >= 1 (q = p throughout).
struct BesovParams {
  double s = 0.5;
  double p = 2.0;

  void check() const;
};

/// p-th power of the double-sum seminorm:
///   sum_{x != y} |f(x)-f(y)|^p / (rho^{sp} mu(B_rho(x))) mu(x) mu(y)
double besov_energy(const MetricMeasureSpace& mm, const ScalarField& f, const BesovParams& params);

/// besov_energy^(1/p)
double besov_seminorm(const MetricMeasureSpace& mm, const ScalarField& f, const BesovParams& params);

/// (sum |f|^p mu)^(1/p)
double lp_norm(const MetricMeasureSpace& mm, const ScalarField& f, double p);

/// L^p norm plus seminorm.
double besov_norm(const MetricMeasureSpace& mm, const ScalarField& f, const BesovParams& params);

struct ClarksonReport {
  double lhs = 0.0;  // ||(f+g)/2||'^p + ||(f-g)/2||'^p
  double rhs = 0.0;  // (||f||'^p + ||g||'^p) / 2
  bool holds = false;
};

/// Clarkson inequality for the primed norm (||.||_p^p + [.]^p)^(1/p); needs p > 2.
ClarksonReport clarkson_check(const MetricMeasureSpace& mm, const ScalarField& f, const ScalarField& g,
                              const BesovParams& params);

struct HajlaszResult {
  ScalarField gradient;  // nonnegative
  double seminorm = 0.0;  // L^p norm of gradient
  double p = 1.0;
  bool upper_bound = false;  // true when not a certified optimum
};

/// Worst violation of |f(x)-f(y)| <= rho^s (g(x) + g(y)) over pairs (<= 0 if feasible).
double hajlasz_violation(const MetricMeasureSpace& mm, const ScalarField& f, const ScalarField& g,
                         double s);

/// Exact p = 1 Hajłasz seminorm by linear programming.
HajlaszResult hajlasz_seminorm_p1(const MetricMeasureSpace& mm, const ScalarField& f, double s);

/// Feasible gradient with small L^p norm; optimal for p = 1, an upper bound otherwise.
HajlaszResult hajlasz_upper_bound(const MetricMeasureSpace& mm, const ScalarField& f, double s, double p);

struct MorreyReport {
  double exponent = 0.0;  // s - Q/p
  double gradient_norm = 0.0;
  double c_star = 0.0;  // max |f(x)-f(y)| / (rho^exponent ||g||_p)
  double C = 0.0;
  bool holds = false;   // c_star <= C
};

MorreyReport morrey_check(const MetricMeasureSpace& mm, const ScalarField& f, const HajlaszResult& result,
                          double s, double p, double C, double Q);

struct RatioReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
};

/// ||f||_inf / (||f||_p + Hajłasz bound), per field; 0 for the zero field.
RatioReport linfty_embedding_check(const MetricMeasureSpace& mm, std::span<const ScalarField> fields,
                                   double s, double p, double Q);

struct LipBesovReport {
  double seminorm = 0.0;     // Besov double-sum seminorm
  double holder_norm = 0.0;  // ||f||_alpha
  double ratio = 0.0;
  double ceiling = 0.0;           // discrete bound k with ratio <= k
  double integral_ceiling = 0.0;  // split-integral value for the dyadic form
  bool holds = false;             // ratio <= 1.1 k
};

LipBesovReport embedding_ratio_lip_besov(const MetricMeasureSpace& mm, const ScalarField& f,
                                         double alpha, const BesovParams& params);

/// Hajłasz upper bound over Besov seminorm, per field (0/0 reported as 0).
RatioReport besov_to_hajlasz_check(const MetricMeasureSpace& mm, std::span<const ScalarField> fields,
                                   double s, double p);

}  // namespace krlip
