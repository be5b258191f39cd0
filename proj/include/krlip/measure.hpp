#pragma once

#include <cstddef>
#include <vector>

#include "krlip/metric.hpp"

namespace krlip {

/// Signed mass per point of a finite space, indexed like the space's points.
struct SignedMeasure {
  std::vector<double> mass;

  SignedMeasure() = default;
  explicit SignedMeasure(std::vector<double> m) : mass(std::move(m)) {}
  static SignedMeasure zero(std::size_t n) { return SignedMeasure(std::vector<double>(n, 0.0)); }
  static SignedMeasure dirac(std::size_t n, std::size_t at, double weight = 1.0);
  /// delta_x - delta_y
  static SignedMeasure dipole(std::size_t n, std::size_t x, std::size_t y);

  std::size_t size() const noexcept { return mass.size(); }
  double operator[](std::size_t i) const noexcept { return mass[i]; }

  double total() const noexcept;
  double tv() const noexcept;
  double max_abs() const noexcept;

  SignedMeasure operator-(const SignedMeasure& other) const;
  SignedMeasure operator+(const SignedMeasure& other) const;
  SignedMeasure scaled(double k) const;
};

struct JordanDecomposition {
  SignedMeasure plus;
  SignedMeasure minus;
};

JordanDecomposition jordan_decompose(const SignedMeasure& nu);

bool is_balanced(const SignedMeasure& nu, double tol);

/// Zeroes every mass with |m| < eps.
SignedMeasure finite_support_truncate(const SignedMeasure& mu, double eps);

/// Throws SizeMismatch unless the measure is indexed by the space's points.
void require_on_space(const FiniteMetricSpace& space, const SignedMeasure& mu);

}  // namespace krlip
