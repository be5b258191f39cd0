#include "krlip/generate.hpp"

#include <cmath>
#include <string>

#include "krlip/error.hpp"
#include "krlip/rng.hpp"

namespace krlip {

SpaceKind parse_space_kind(std::string_view name) {
  if (name == "grid1d") return SpaceKind::Grid1d;
  if (name == "grid2d") return SpaceKind::Grid2d;
  if (name == "cantor") return SpaceKind::Cantor;
  if (name == "random-euclidean") return SpaceKind::RandomEuclidean;
  throw Error(ErrorCode::BadKind, "unknown space kind '" + std::string(name) + "'");
}

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Grid1d: return "grid1d";
    case SpaceKind::Grid2d: return "grid2d";
    case SpaceKind::Cantor: return "cantor";
    case SpaceKind::RandomEuclidean: return "random-euclidean";
  }
  return "?";
}

std::vector<std::vector<double>> generate_coordinates(SpaceKind kind, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::NTooSmall, "n must be at least 1, got " + std::to_string(n));
  std::vector<std::vector<double>> coords;
  switch (kind) {
    case SpaceKind::Grid1d: {
      for (int i = 0; i < n; ++i) coords.push_back({n == 1 ? 0.0 : static_cast<double>(i) / (n - 1)});
      break;
    }
    case SpaceKind::Grid2d: {
      int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
      while (m * m < n) ++m;
      while (m > 1 && (m - 1) * (m - 1) >= n) --m;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          const double step = m == 1 ? 0.0 : 1.0 / (m - 1);
          coords.push_back({i * step, j * step});
        }
      }
      break;
    }
    case SpaceKind::Cantor: {
      if ((n & (n - 1)) != 0) {
        throw Error(ErrorCode::InvalidArgument, "cantor needs n = 2^k, got " + std::to_string(n));
      }
      int k = 0;
      while ((1 << k) < n) ++k;
      if (k > 30) throw Error(ErrorCode::InvalidArgument, "cantor level too deep");
      // Left endpoints in units of 3^-k: ternary digits restricted to {0, 2}.
      const double denom = std::pow(3.0, k);
      for (int code = 0; code < n; ++code) {
        long long left = 0;
        for (int d = k - 1; d >= 0; --d) left = 3 * left + (((code >> d) & 1) ? 2 : 0);
        coords.push_back({static_cast<double>(left) / denom});
        coords.push_back({static_cast<double>(left + 1) / denom});
      }
      if (k == 0) coords = {{0.0}, {1.0}};
      break;
    }
    case SpaceKind::RandomEuclidean: {
      SplitMix64 rng(seed);
      for (int i = 0; i < n; ++i) {
        const double x = rng.uniform();
        const double y = rng.uniform();
        coords.push_back({x, y});
      }
      break;
    }
  }
  return coords;
}

GeneratedSpace generate_space(SpaceKind kind, int n, std::uint64_t seed, std::optional<double> alpha) {
  auto coords = generate_coordinates(kind, n, seed);
  FiniteMetricSpace space = FiniteMetricSpace::euclidean(coords);
  if (alpha) space = snowflake(space, *alpha);
  return {std::move(coords), MetricMeasureSpace::uniform(std::move(space))};
}

ScalarField midpoint_displacement(int levels, double alpha, std::uint64_t seed) {
  if (levels < 0 || levels > 24) throw Error(ErrorCode::InvalidArgument, "levels must lie in [0, 24]");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1]");
  SplitMix64 rng(seed);
  const std::size_t n = (std::size_t{1} << levels) + 1;
  std::vector<double> v(n, 0.0);
  v[0] = rng.uniform(-0.5, 0.5);
  v[n - 1] = rng.uniform(-0.5, 0.5);
  for (int k = 1; k <= levels; ++k) {
    const std::size_t stride = std::size_t{1} << (levels - k + 1);
    const double amplitude = std::pow(2.0, -alpha * k);
    for (std::size_t left = 0; left + stride < n; left += stride) {
      v[left + stride / 2] = 0.5 * (v[left] + v[left + stride]) + amplitude * rng.uniform(-0.5, 0.5);
    }
  }
  return ScalarField{std::move(v)};
}

}  // namespace krlip
