#include "krlip/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krlip/error.hpp"
#include "krlip/numeric.hpp"
#include "krlip/transport.hpp"

namespace krlip {

namespace {

void require_open_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

// Same rounding as snowflake(), so reconstruction divides by the exact value
// the decomposition multiplied with.
double dipole_scale(const FiniteMetricSpace& space, std::size_t x, std::size_t y, double alpha) {
  return std::pow(space(x, y), alpha);
}

// Bound checks compare numbers produced by two LP solves of the same problem.
constexpr double kBoundSlack = 1e-12;

}  // namespace

double AtomicDecomposition::gamma_sum() const noexcept {
  std::vector<double> g;
  g.reserve(atoms.size());
  for (const auto& a : atoms) g.push_back(a.gamma);
  return ordered_sum(std::move(g));
}

AtomicDecomposition decompose(const FiniteMetricSpace& space, const SignedMeasure& mu, double alpha) {
  require_open_alpha(alpha);
  require_on_space(space, mu);
  const FiniteMetricSpace snow = snowflake(space, alpha);
  const KRResult kr = kr_norm(snow, mu);

  AtomicDecomposition dec;
  dec.alpha = alpha;
  std::vector<WeightedAtom> dipoles;
  // Net Dirac mass per point: the residual plus any rerouted arcs.
  std::vector<double> dirac_mass(kr.residual.mass);
  for (const Arc& arc : kr.plan.arcs) {
    // Moving mass from `from` to `to` contributes delta_to - delta_from.
    const double scale = dipole_scale(space, arc.to, arc.from, alpha);
    if (scale > 2.0) {
      dirac_mass[arc.to] += arc.mass;
      dirac_mass[arc.from] -= arc.mass;
      continue;
    }
    // Same product as the plan's cost term, so gamma_sum matches the norm.
    dipoles.push_back({arc.mass * snow(arc.from, arc.to), Atom::dipole(arc.to, arc.from, scale)});
  }
  std::sort(dipoles.begin(), dipoles.end(), [](const WeightedAtom& a, const WeightedAtom& b) {
    return std::pair(a.atom.x, a.atom.y) < std::pair(b.atom.x, b.atom.y);
  });
  dec.atoms = std::move(dipoles);
  // Residual entries at rounding level are solver noise, not mass.
  const double noise = 1e-14 * (1.0 + mu.tv());
  for (std::size_t z = 0; z < dirac_mass.size(); ++z) {
    const double m = dirac_mass[z];
    if (std::abs(m) > noise) dec.atoms.push_back({std::abs(m), Atom::dirac(z, m > 0.0 ? 1 : -1)});
  }
  return dec;
}

SignedMeasure reconstruct(const FiniteMetricSpace& space, const AtomicDecomposition& dec) {
  const std::size_t n = space.size();
  SignedMeasure out = SignedMeasure::zero(n);
  for (const auto& [gamma, atom] : dec.atoms) {
    if (atom.kind == Atom::Kind::Dipole) {
      if (atom.x >= n || atom.y >= n || atom.x == atom.y) {
        throw Error(ErrorCode::UnknownPoint, "dipole references an invalid point pair");
      }
      const double m = gamma / dipole_scale(space, atom.x, atom.y, dec.alpha);
      out.mass[atom.x] += m;
      out.mass[atom.y] -= m;
    } else {
      if (atom.z >= n) throw Error(ErrorCode::UnknownPoint, "dirac references an invalid point");
      out.mass[atom.z] += atom.sign * gamma;
    }
  }
  return out;
}

DecompositionBounds verify_bounds(const FiniteMetricSpace& space, const SignedMeasure& mu,
                                  const AtomicDecomposition& dec, double alpha) {
  require_open_alpha(alpha);
  require_on_space(space, mu);
  DecompositionBounds r;
  r.reconstruction_error = (reconstruct(space, dec) - mu).max_abs();
  if (!(r.reconstruction_error <= kReconstructionTolerance)) {
    throw Error(ErrorCode::ReconstructionMismatch,
                "max abs reconstruction error " + std::to_string(r.reconstruction_error));
  }
  const FiniteMetricSpace snow = snowflake(space, alpha);
  r.gamma_sum = dec.gamma_sum();
  r.norm = kr_norm(snow, mu).primal_value;
  r.realized_c = r.gamma_sum > 0.0 ? std::min(1.0, r.norm / r.gamma_sum) : 1.0;
  // The quotient may round up; step down until C * sum <= norm holds as computed.
  while (r.realized_c > 0.0 && r.realized_c * r.gamma_sum > r.norm) {
    r.realized_c = std::nextafter(r.realized_c, 0.0);
  }
  const double slack = kBoundSlack * (1.0 + r.gamma_sum);
  r.upper_bound_holds = r.norm <= r.gamma_sum + slack;
  r.lower_bound_holds = r.realized_c * r.gamma_sum <= r.norm + slack;
  const std::size_t n = space.size();
  for (const auto& [gamma, atom] : dec.atoms) {
    r.max_support = std::max(r.max_support, atom.support_size());
    if (atom.kind == Atom::Kind::Dipole) {
      const double scale = dipole_scale(space, atom.x, atom.y, alpha);
      if (scale > 2.0) r.all_dipoles_capped = false;
      // Norm of delta_x - delta_y is min(rho^alpha, 2); the atom divides by rho^alpha.
      const double pair = kr_norm(snow, SignedMeasure::dipole(n, atom.x, atom.y)).primal_value;
      r.pair_norms.push_back(pair);
      r.atom_norms.push_back(pair / scale);
    } else {
      const double norm = kr_norm(snow, SignedMeasure::dirac(n, atom.z, atom.sign)).primal_value;
      r.pair_norms.push_back(norm);
      r.atom_norms.push_back(norm);
    }
  }
  return r;
}

}  // namespace krlip
