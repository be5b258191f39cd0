#pragma once

// Independent brute-force solvers used as test oracles. None of them share
// code with the library's simplex.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "krlip/field.hpp"
#include "krlip/measure.hpp"
#include "krlip/metric.hpp"
#include "krlip/rng.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Solves the square system M x = r by Gaussian elimination with partial
// pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve_square(Matrix m, std::vector<double> r) {
  const std::size_t n = r.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
    }
    if (std::abs(m[piv][c]) < 1e-10) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(r[piv], r[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const double k = m[i][c] / m[c][c];
      if (k == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= k * m[c][j];
      r[i] -= k * r[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / m[i][i];
  return x;
}

// max c.x subject to A x <= b, by enumerating every basis of n tight rows.
// The feasible region must be bounded (a polytope).
inline double vertex_enumeration_max(const std::vector<double>& c, const Matrix& A, const std::vector<double>& b) {
  const std::size_t n = c.size();
  const std::size_t m = A.size();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == n) {
      Matrix M(n);
      std::vector<double> r(n);
      for (std::size_t i = 0; i < n; ++i) {
        M[i] = A[pick[i]];
        r[i] = b[pick[i]];
      }
      const auto x = solve_square(M, r);
      if (!x) return;
      for (std::size_t k = 0; k < m; ++k) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) lhs += A[k][j] * (*x)[j];
        if (lhs > b[k] + 1e-9 * (1.0 + std::abs(b[k]))) return;
      }
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += c[j] * (*x)[j];
      best = std::max(best, v);
      return;
    }
    for (std::size_t k = from; k + (n - depth) <= m; ++k) {
      pick[depth] = k;
      rec(depth + 1, k + 1);
    }
  };
  rec(0, 0);
  return best;
}

// Dual of the balanced norm: max sum f nu over 1-Lipschitz f with f(0) = 0.
inline double kr0_by_vertices(const krlip::FiniteMetricSpace& space, const krlip::SignedMeasure& nu) {
  const std::size_t n = space.size();
  Matrix A;
  std::vector<double> b;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      std::vector<double> row(n, 0.0);
      row[y] = 1.0;
      row[x] = -1.0;
      A.push_back(row);
      b.push_back(space(x, y));
    }
  }
  std::vector<double> pin(n, 0.0);
  pin[0] = 1.0;
  A.push_back(pin);
  b.push_back(0.0);
  pin[0] = -1.0;
  A.push_back(pin);
  b.push_back(0.0);
  return vertex_enumeration_max(nu.mass, A, b);
}

// Dual of the full norm: additionally |f| <= 1.
inline double kr_by_vertices(const krlip::FiniteMetricSpace& space, const krlip::SignedMeasure& mu) {
  const std::size_t n = space.size();
  Matrix A;
  std::vector<double> b;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      std::vector<double> row(n, 0.0);
      row[y] = 1.0;
      row[x] = -1.0;
      A.push_back(row);
      b.push_back(space(x, y));
    }
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> row(n, 0.0);
      row[x] = sgn;
      A.push_back(row);
      b.push_back(1.0);
    }
  }
  return vertex_enumeration_max(mu.mass, A, b);
}

// Hajłasz p = 1 value: min sum g mu with g(x)+g(y) >= w(x,y), g >= 0. As a
// max problem on -g; the region is unbounded above in g, so every g is
// capped at the largest weight (an optimum never exceeds it).
inline std::vector<double> hajlasz_weights(const krlip::MetricMeasureSpace& mm, const krlip::ScalarField& f,
                                           double s) {
  const std::size_t n = mm.size();
  std::vector<double> w(n * n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y) w[x * n + y] = std::abs(f[x] - f[y]) / std::pow(mm.space()(x, y), s);
    }
  }
  return w;
}

inline double hajlasz_p1_by_vertices(const krlip::MetricMeasureSpace& mm, const krlip::ScalarField& f, double s) {
  const std::size_t n = mm.size();
  const auto w = hajlasz_weights(mm, f, s);
  const double cap = *std::max_element(w.begin(), w.end());
  Matrix A;
  std::vector<double> b;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      std::vector<double> row(n, 0.0);
      row[x] = -1.0;
      row[y] = -1.0;
      A.push_back(row);
      b.push_back(-w[x * n + y]);
    }
    std::vector<double> lo(n, 0.0), hi(n, 0.0);
    lo[x] = -1.0;
    hi[x] = 1.0;
    A.push_back(lo);
    b.push_back(0.0);
    A.push_back(hi);
    b.push_back(cap);
  }
  std::vector<double> c(n);
  for (std::size_t x = 0; x < n; ++x) c[x] = -mm.weight()[x];
  return -vertex_enumeration_max(c, A, b);
}

// Grid search for the p = 1 value: all but the last coordinate on a grid,
// the last one set to its cheapest feasible value. Coarse-to-fine around the
// incumbent down to `step`.
inline double hajlasz_p1_grid(const krlip::MetricMeasureSpace& mm, const krlip::ScalarField& f, double s,
                              double step) {
  const std::size_t n = mm.size();
  const auto w = hajlasz_weights(mm, f, s);
  const double cap = *std::max_element(w.begin(), w.end());
  if (cap == 0.0) return 0.0;
  const auto value_of = [&](std::vector<double>& g) {
    double need = 0.0;
    for (std::size_t x = 0; x + 1 < n; ++x) {
      for (std::size_t y = x + 1; y + 1 < n; ++y) {
        if (g[x] + g[y] < w[x * n + y] - 1e-12) return std::numeric_limits<double>::infinity();
      }
      need = std::max(need, w[x * n + (n - 1)] - g[x]);
    }
    g[n - 1] = need;
    double v = 0.0;
    for (std::size_t x = 0; x < n; ++x) v += g[x] * mm.weight()[x];
    return v;
  };
  std::vector<double> centre(n, 0.5 * cap);
  double half = 0.5 * cap;
  double h = cap / 20.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_g = centre;
  while (true) {
    const std::size_t dims = n - 1;
    const int span = static_cast<int>(std::ceil(half / h));
    std::vector<int> idx(dims, -span);
    while (true) {
      std::vector<double> g(n, 0.0);
      bool ok = true;
      for (std::size_t d = 0; d < dims; ++d) {
        g[d] = centre[d] + idx[d] * h;
        if (g[d] < -1e-15 || g[d] > cap + 1e-15) ok = false;
        g[d] = std::clamp(g[d], 0.0, cap);
      }
      if (ok) {
        const double v = value_of(g);
        if (v < best) {
          best = v;
          best_g = g;
        }
      }
      std::size_t d = 0;
      while (d < dims && ++idx[d] > span) idx[d++] = -span;
      if (d == dims) break;
    }
    if (h <= step * (1.0 + 1e-12)) break;
    centre = best_g;
    half = 2.0 * h;
    h = std::max(step, h / 10.0);
  }
  return best;
}

// p = 2 Hajłasz value by KKT active-set enumeration of the quadratic
// program min sum g^2 mu subject to g(x)+g(y) >= w(x,y), g >= 0.
inline double hajlasz_p2_by_active_sets(const krlip::MetricMeasureSpace& mm, const krlip::ScalarField& f,
                                        double s) {
  const std::size_t n = mm.size();
  const auto w = hajlasz_weights(mm, f, s);
  // Constraint rows a.g >= b.
  Matrix A;
  std::vector<double> b;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      std::vector<double> row(n, 0.0);
      row[x] = row[y] = 1.0;
      A.push_back(row);
      b.push_back(w[x * n + y]);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<double> row(n, 0.0);
    row[x] = 1.0;
    A.push_back(row);
    b.push_back(0.0);
  }
  const std::size_t m = A.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> act;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    // Stationarity: 2 mu_i g_i = sum_k lambda_k a_ki, active rows tight.
    const std::size_t k = act.size();
    const std::size_t dim = n + k;
    Matrix M(dim, std::vector<double>(dim, 0.0));
    std::vector<double> r(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      M[i][i] = 2.0 * mm.weight()[i];
      for (std::size_t a = 0; a < k; ++a) M[i][n + a] = -A[act[a]][i];
    }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t i = 0; i < n; ++i) M[n + a][i] = A[act[a]][i];
      r[n + a] = b[act[a]];
    }
    if (const auto sol = solve_square(M, r)) {
      bool ok = true;
      for (std::size_t a = 0; a < k && ok; ++a) ok = (*sol)[n + a] >= -1e-12;
      for (std::size_t row = 0; row < m && ok; ++row) {
        double lhs = 0.0;
        for (std::size_t i = 0; i < n; ++i) lhs += A[row][i] * (*sol)[i];
        ok = lhs >= b[row] - 1e-9;
      }
      if (ok) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v += (*sol)[i] * (*sol)[i] * mm.weight()[i];
        best = std::min(best, std::sqrt(v));
      }
    }
    if (k == n) return;
    for (std::size_t c = from; c < m; ++c) {
      act.push_back(c);
      rec(c + 1);
      act.pop_back();
    }
  };
  rec(0);
  return best;
}

// Random metric: shortest paths over random positive edge weights.
inline krlip::FiniteMetricSpace random_metric(krlip::SplitMix64& rng, std::size_t n, double lo = 0.1,
                                              double hi = 3.0) {
  Matrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = rng.uniform(lo, hi);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return krlip::FiniteMetricSpace::validate(d);
}

inline krlip::SignedMeasure random_measure(krlip::SplitMix64& rng, std::size_t n, bool balanced) {
  std::vector<double> m(n);
  for (auto& v : m) v = rng.uniform(-1.0, 1.0);
  if (balanced) {
    double t = 0.0;
    for (double v : m) t += v;
    for (auto& v : m) v -= t / static_cast<double>(n);
  }
  return krlip::SignedMeasure(m);
}

inline krlip::ScalarField random_field(krlip::SplitMix64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return krlip::ScalarField(v);
}

}  // namespace oracle
