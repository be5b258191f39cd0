#pragma once

#include <cstddef>
#include <vector>

namespace krlip {

/// Real value per point: Lipschitz test functions and dual potentials.
struct ScalarField {
  std::vector<double> value;

  ScalarField() = default;
  explicit ScalarField(std::vector<double> v) : value(std::move(v)) {}
  static ScalarField constant(std::size_t n, double c) {
    return ScalarField(std::vector<double>(n, c));
  }
  std::size_t size() const noexcept { return value.size(); }
  double operator[](std::size_t i) const noexcept { return value[i]; }
};

}  // namespace krlip
