#pragma once

#include <cstddef>
#include <vector>

#include "krlip/measure.hpp"
#include "krlip/metric.hpp"

namespace krlip {

/// Unit building block of a decomposition.
///   Dipole(x, y): (delta_x - delta_y) / rho(x,y)^alpha
///   Dirac(z, s):  s * delta_z
struct Atom {
  enum class Kind { Dipole, Dirac };

  Kind kind = Kind::Dirac;
  std::size_t x = 0;  // dipole endpoints
  std::size_t y = 0;
  std::size_t z = 0;  // dirac location
  int sign = 1;
  double normalization = 1.0;  // rho(x,y)^alpha for dipoles, 1 for diracs

  static Atom dipole(std::size_t x, std::size_t y, double normalization) {
    return {Kind::Dipole, x, y, 0, 1, normalization};
  }
  static Atom dirac(std::size_t z, int sign) { return {Kind::Dirac, 0, 0, z, sign, 1.0}; }

  std::size_t support_size() const noexcept { return kind == Kind::Dipole ? 2 : 1; }
};

struct WeightedAtom {
  double gamma = 0.0;
  Atom atom;
};

struct AtomicDecomposition {
  double alpha = 0.5;
  std::vector<WeightedAtom> atoms;

  double gamma_sum() const noexcept;
};

/// Dipoles from the optimal plan on the snowflaked space plus Diracs from the
/// residual. Arcs whose dipole would exceed the unit-norm cap are split into
/// two Diracs.
AtomicDecomposition decompose(const FiniteMetricSpace& space, const SignedMeasure& mu, double alpha);

/// Sum of gamma * atom; dipole scales are recomputed from the space.
SignedMeasure reconstruct(const FiniteMetricSpace& space, const AtomicDecomposition& dec);

struct DecompositionBounds {
  double gamma_sum = 0.0;
  double norm = 0.0;        // kr_norm on the snowflaked space
  double realized_c = 0.0;  // norm / gamma_sum, 1 for the empty decomposition
  std::vector<double> atom_norms;  // norm of each normalized atom
  std::vector<double> pair_norms;  // dipoles: norm of delta_x - delta_y; diracs: as above
  double reconstruction_error = 0.0;
  bool upper_bound_holds = false;  // norm <= gamma_sum
  bool lower_bound_holds = false;  // realized_c * gamma_sum <= norm
  bool all_dipoles_capped = true;  // every dipole has rho^alpha <= 2
  std::size_t max_support = 0;
};

/// Tolerance on reconstruction and on the two-sided bound.
inline constexpr double kReconstructionTolerance = 1e-9;

DecompositionBounds verify_bounds(const FiniteMetricSpace& space, const SignedMeasure& mu,
                                  const AtomicDecomposition& dec, double alpha);

}  // namespace krlip
