#include <doctest.h>

#include <cmath>

#include "krlip/error.hpp"
#include "krlip/generate.hpp"
#include "krlip/metric.hpp"
#include "oracles.hpp"

using namespace krlip;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

FiniteMetricSpace grid(int n) { return generate_space(SpaceKind::Grid1d, n, 0).mm.space(); }

}  // namespace

TEST_CASE("validate_metric examples") {
  const auto one = validate_metric({{0.0}});
  CHECK(one.size() == 1);
  CHECK(one.diam() == 0.0);

  const auto two = validate_metric({{0, 1}, {1, 0}});
  CHECK(two.diam() == 1.0);
  CHECK(two.id(1) == "1");

  try {
    validate_metric({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    FAIL("expected TriangleViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TriangleViolation);
    CHECK(e.detail().find("0") != std::string::npos);
  }
}

TEST_CASE("validate_metric error codes") {
  CHECK(code_of([] { validate_metric({{0, 1}, {2, 0}}); }) == ErrorCode::AsymmetricMatrix);
  CHECK(code_of([] { validate_metric({{0, 0}, {0, 0}}); }) == ErrorCode::ZeroOffDiagonal);
  CHECK(code_of([] { validate_metric({{0, -1}, {-1, 0}}); }) == ErrorCode::NegativeEntry);
  CHECK(code_of([] { validate_metric({{0, 1}}); }) == ErrorCode::NotSquare);
  CHECK(code_of([] { validate_metric({{0, 1}, {1, 0}}, {"a", "a"}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("snowflake") {
  const auto s = validate_metric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  const auto half = snowflake(s, 0.5);
  CHECK(half(0, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(half(0, 1) == 1.0);
  validate_metric(half.matrix());
  CHECK(snowflake(s, 1.0).matrix() == s.matrix());
  CHECK(snowflake(validate_metric({{0, 4}, {4, 0}}), 0.5)(0, 1) == 2.0);
  CHECK(code_of([&] { snowflake(s, 0.0); }) == ErrorCode::AlphaOutOfRange);
  CHECK(code_of([&] { snowflake(s, 1.5); }) == ErrorCode::AlphaOutOfRange);

  SplitMix64 rng(7);
  const auto r = oracle::random_metric(rng, 8);
  const auto ab = snowflake(snowflake(r, 0.6), 0.5);
  const auto direct = snowflake(r, 0.3);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) CHECK(std::abs(ab(i, j) - direct(i, j)) <= 1e-12 * (1 + direct(i, j)));
  }
}

TEST_CASE("net hierarchy covering bound by exhaustive scan") {
  const auto single = validate_metric({{0.0}});
  const auto hs = build_net_hierarchy(single, 3, 1.0);
  for (const auto& level : hs.levels) CHECK(level == std::vector<std::size_t>{0});

  const auto g = grid(11);
  const auto h = build_net_hierarchy(g, 4, 1.0);
  REQUIRE(h.levels.size() == 5);
  CHECK(h.levels[0].size() == 1);
  for (std::size_t k = 0; k < h.levels.size(); ++k) {
    double worst = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
      double nearest = INFINITY;
      for (std::size_t c : h.levels[k]) nearest = std::min(nearest, g(x, c));
      worst = std::max(worst, nearest);
    }
    CHECK(worst <= std::ldexp(1.0, -static_cast<int>(k)) + 1e-12);
    if (k > 0) {
      for (std::size_t c : h.levels[k - 1]) {
        CHECK(std::find(h.levels[k].begin(), h.levels[k].end(), c) != h.levels[k].end());
      }
    }
  }
}

TEST_CASE("doubling constant estimates") {
  CHECK(estimate_doubling_constant(validate_metric({{0.0}})) == 1);
  CHECK(estimate_doubling_constant(validate_metric({{0, 1}, {1, 0}})) <= 2);
  CHECK(estimate_doubling_constant(grid(33)) <= 3);
  const auto mm = MetricMeasureSpace::uniform(grid(33));
  const double md = estimate_measure_doubling(mm);
  CHECK(md >= 1.0);
  CHECK(std::isfinite(md));
}

TEST_CASE("lower mass bound") {
  const auto two = MetricMeasureSpace::uniform(validate_metric({{0, 1}, {1, 0}}));
  const auto b2 = fit_lower_mass_bound(two);
  CHECK(b2.C <= 0.5);
  for (std::size_t x = 0; x < 2; ++x) {
    CHECK(two.ball_mass(x, 1.0) >= b2.C * std::pow(1.0, b2.Q));
    CHECK(two.ball_mass(x, 0.999) >= b2.C * std::pow(0.999, b2.Q));
  }

  const auto tri = MetricMeasureSpace::uniform(validate_metric({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  const auto b3 = fit_lower_mass_bound(tri);
  for (std::size_t x = 0; x < 3; ++x) CHECK(tri.ball_mass(x, 1.0) >= b3.C);

  const auto mm = generate_space(SpaceKind::Grid1d, 101, 0).mm;
  const auto b = fit_lower_mass_bound(mm);
  CHECK(std::abs(b.Q - 1.0) <= 0.2);
  // Just below every realized radius, where the step function is lowest.
  for (std::size_t x = 0; x < mm.size(); ++x) {
    for (double r : mm.space().realized_distances()) {
      CHECK(mm.ball_mass(x, r) >= b.C * std::pow(r, b.Q));
      CHECK(mm.ball_mass(x, r - 1e-9) >= b.C * std::pow(r - 1e-9, b.Q));
    }
  }
  CHECK(code_of([] { fit_lower_mass_bound(MetricMeasureSpace::uniform(validate_metric({{0.0}}))); }) ==
        ErrorCode::DegenerateFit);
}

TEST_CASE("ball masses are closed balls") {
  const auto mm = MetricMeasureSpace::uniform(grid(3));
  CHECK(mm.ball_mass(0, 0.5) == doctest::Approx(2.0 / 3.0));
  CHECK(mm.ball_mass(1, 0.5) == doctest::Approx(1.0));
  CHECK(mm.ball_mass(0, 0.49) == doctest::Approx(1.0 / 3.0));
  CHECK(mm.total_mass() == doctest::Approx(1.0));
}

TEST_CASE("generated spaces") {
  const auto g2 = generate_space(SpaceKind::Grid1d, 2, 0).mm;
  CHECK(g2.space()(0, 1) == 1.0);
  const auto g3 = generate_space(SpaceKind::Grid1d, 3, 0).mm;
  CHECK(g3.space().realized_distances() == std::vector<double>{0.5, 1.0});
  const auto c = generate_coordinates(SpaceKind::Cantor, 4, 0);
  const std::vector<double> expect{0, 1.0 / 9, 2.0 / 9, 1.0 / 3, 2.0 / 3, 7.0 / 9, 8.0 / 9, 1};
  REQUIRE(c.size() == expect.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i][0] == doctest::Approx(expect[i]).epsilon(1e-15));
  CHECK(generate_coordinates(SpaceKind::Grid2d, 5, 0).size() == 9);
  for (auto kind : {SpaceKind::Grid1d, SpaceKind::Grid2d, SpaceKind::Cantor, SpaceKind::RandomEuclidean}) {
    const auto s = generate_space(kind, 16, 3, 0.5);
    validate_metric(s.mm.space().matrix());
    CHECK(s.mm.weight().front() == doctest::Approx(1.0 / s.mm.size()));
  }
  CHECK(code_of([] { parse_space_kind("torus"); }) == ErrorCode::BadKind);
  CHECK(code_of([] { generate_space(SpaceKind::Grid1d, 0, 0); }) == ErrorCode::NTooSmall);
  const auto a = generate_coordinates(SpaceKind::RandomEuclidean, 10, 42);
  CHECK(a == generate_coordinates(SpaceKind::RandomEuclidean, 10, 42));
  CHECK(a != generate_coordinates(SpaceKind::RandomEuclidean, 10, 43));
}
