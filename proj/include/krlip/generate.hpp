#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "krlip/field.hpp"
#include "krlip/metric.hpp"

namespace krlip {

enum class SpaceKind { Grid1d, Grid2d, Cantor, RandomEuclidean };

/// "grid1d", "grid2d", "cantor", "random-euclidean"; BadKind otherwise.
SpaceKind parse_space_kind(std::string_view name);
const char* to_string(SpaceKind kind);

/// Coordinate rows of the generated point set.
///   grid1d: n equispaced points on [0,1]
///   grid2d: ceil(sqrt n)^2 lattice on [0,1]^2
///   cantor: n = 2^k, the 2^(k+1) interval endpoints of level k
///   random-euclidean: n uniform points in [0,1]^2
std::vector<std::vector<double>> generate_coordinates(SpaceKind kind, int n, std::uint64_t seed);

struct GeneratedSpace {
  std::vector<std::vector<double>> coords;
  MetricMeasureSpace mm;
};

/// Euclidean space on generate_coordinates, snowflaked if alpha is given,
/// with uniform weights 1/size.
GeneratedSpace generate_space(SpaceKind kind, int n, std::uint64_t seed,
                              std::optional<double> alpha = std::nullopt);

/// Random alpha-Hölder profile on the 2^levels + 1 dyadic points of [0,1]:
/// each refinement adds a uniform offset of amplitude 2^(-alpha k) to the
/// midpoint average.
ScalarField midpoint_displacement(int levels, double alpha, std::uint64_t seed);

}  // namespace krlip
