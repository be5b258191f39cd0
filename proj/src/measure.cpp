#include "krlip/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krlip/error.hpp"

namespace krlip {

namespace {
void require_same_size(const SignedMeasure& a, const SignedMeasure& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::SizeMismatch, "measures live on spaces of different size");
  }
}
}  // namespace

SignedMeasure SignedMeasure::dirac(std::size_t n, std::size_t at, double weight) {
  SignedMeasure m = zero(n);
  m.mass.at(at) = weight;
  return m;
}

SignedMeasure SignedMeasure::dipole(std::size_t n, std::size_t x, std::size_t y) {
  SignedMeasure m = zero(n);
  m.mass.at(x) += 1.0;
  m.mass.at(y) -= 1.0;
  return m;
}

double SignedMeasure::total() const noexcept {
  double s = 0.0;
  for (double m : mass) s += m;
  return s;
}

double SignedMeasure::tv() const noexcept {
  double s = 0.0;
  for (double m : mass) s += std::abs(m);
  return s;
}

double SignedMeasure::max_abs() const noexcept {
  double s = 0.0;
  for (double m : mass) s = std::max(s, std::abs(m));
  return s;
}

SignedMeasure SignedMeasure::operator-(const SignedMeasure& other) const {
  require_same_size(*this, other);
  SignedMeasure out(mass);
  for (std::size_t i = 0; i < mass.size(); ++i) out.mass[i] -= other.mass[i];
  return out;
}

SignedMeasure SignedMeasure::operator+(const SignedMeasure& other) const {
  require_same_size(*this, other);
  SignedMeasure out(mass);
  for (std::size_t i = 0; i < mass.size(); ++i) out.mass[i] += other.mass[i];
  return out;
}

SignedMeasure SignedMeasure::scaled(double k) const {
  SignedMeasure out(mass);
  for (double& m : out.mass) m *= k;
  return out;
}

JordanDecomposition jordan_decompose(const SignedMeasure& nu) {
  JordanDecomposition out{SignedMeasure::zero(nu.size()), SignedMeasure::zero(nu.size())};
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu.mass[i] > 0.0) {
      out.plus.mass[i] = nu.mass[i];
    } else if (nu.mass[i] < 0.0) {
      out.minus.mass[i] = -nu.mass[i];
    }
  }
  return out;
}

bool is_balanced(const SignedMeasure& nu, double tol) {
  if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
  return std::abs(nu.total()) <= tol;
}

SignedMeasure finite_support_truncate(const SignedMeasure& mu, double eps) {
  if (eps < 0.0) throw Error(ErrorCode::InvalidArgument, "eps must be nonnegative");
  SignedMeasure out(mu.mass);
  for (double& m : out.mass) {
    if (std::abs(m) < eps) m = 0.0;
  }
  return out;
}

void require_on_space(const FiniteMetricSpace& space, const SignedMeasure& mu) {
  if (mu.size() != space.size()) {
    throw Error(ErrorCode::SizeMismatch, "measure has " + std::to_string(mu.size()) +
                                             " entries for a space of " +
                                             std::to_string(space.size()) + " points");
  }
}

}  // namespace krlip
