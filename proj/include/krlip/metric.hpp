#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace krlip {

/// Absolute tolerance used when checking the metric axioms.
inline constexpr double kMetricTolerance = 1e-12;

/// A finite metric space: point ids plus a dense symmetric distance matrix.
/// Immutable once constructed; every instance satisfies the metric axioms.
class FiniteMetricSpace {
 public:
  /// Validates all axioms (O(n^3) triangle scan). `ids` defaults to "0".."n-1".
  static FiniteMetricSpace validate(const std::vector<std::vector<double>>& dist,
                                    std::vector<std::string> ids = {});

  /// Euclidean distances between coordinate rows. Only distinctness and
  /// id uniqueness are checked since the axioms hold by construction.
  static FiniteMetricSpace euclidean(const std::vector<std::vector<double>>& coords,
                                     std::vector<std::string> ids = {});

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return dist_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {dist_.data() + i * n_, n_};
  }
  double diam() const noexcept { return diam_; }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  std::optional<std::size_t> index_of(std::string_view id) const;

  std::vector<std::vector<double>> matrix() const;

  /// Sorted distinct positive distances (merged at kMetricTolerance).
  std::vector<double> realized_distances() const;

 private:
  friend FiniteMetricSpace snowflake(const FiniteMetricSpace&, double);

  // Trusted constructor: caller guarantees the axioms.
  FiniteMetricSpace(std::size_t n, std::vector<double> dist, std::vector<std::string> ids);

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  double diam_ = 0.0;
};

/// validate_metric: alias for FiniteMetricSpace::validate.
FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& dist,
                                  std::vector<std::string> ids = {});

/// Entrywise rho^alpha, alpha in (0, 1].
FiniteMetricSpace snowflake(const FiniteMetricSpace& space, double alpha);

/// Finite space with a strictly positive weight per point.
class MetricMeasureSpace {
 public:
  MetricMeasureSpace(FiniteMetricSpace space, std::vector<double> weight);
  static MetricMeasureSpace uniform(FiniteMetricSpace space);

  const FiniteMetricSpace& space() const noexcept { return space_; }
  const std::vector<double>& weight() const noexcept { return weight_; }
  std::size_t size() const noexcept { return space_.size(); }
  double total_mass() const noexcept;

  /// Mass of the closed ball {y : rho(x,y) <= r}; radii within
  /// kMetricTolerance of a realized distance count as hitting it.
  double ball_mass(std::size_t x, double r) const;

 private:
  FiniteMetricSpace space_;
  std::vector<double> weight_;
  // Per center: neighbours sorted by distance and cumulative masses.
  std::vector<std::vector<double>> sorted_dist_;
  std::vector<std::vector<double>> cumulative_mass_;
};

struct NetHierarchy {
  std::vector<std::vector<std::size_t>> levels;  // nested, sorted point indices
  std::vector<double> radii;                      // r0 * 2^-n
};

/// Greedy farthest-point nets: level n covers every point within radii[n].
NetHierarchy build_net_hierarchy(const FiniteMetricSpace& space, int depth, double r0);

/// Largest distance from any point to the nearest point of `subset`.
double covering_radius(const FiniteMetricSpace& space, std::span<const std::size_t> subset);

/// Upper bound on the doubling constant: over every center and realized
/// radius, the greedy half-radius cover size of the closed ball.
int estimate_doubling_constant(const FiniteMetricSpace& space);

/// Volume-ratio doubling estimate: max of mu(B_2r(x)) / mu(B_r(x)) over every
/// center and realized radius r.
double estimate_measure_doubling(const MetricMeasureSpace& mm);

struct LowerMassBound {
  double C = 0.0;
  double Q = 0.0;
  std::size_t samples = 0;  // realized (x, r) pairs used
};

/// Log-log fit of mu(B_r(x)) ~ C r^Q, with C shrunk so that the bound
/// holds for every center and every r in (0, diam].
LowerMassBound fit_lower_mass_bound(const MetricMeasureSpace& mm);

}  // namespace krlip
