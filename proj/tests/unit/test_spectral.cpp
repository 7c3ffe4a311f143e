#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "polyrec/arcs.hpp"
#include "polyrec/error.hpp"
#include "polyrec/generators.hpp"
#include "polyrec/spectral.hpp"

using namespace polyrec;

namespace {

std::vector<std::int64_t> lag(std::initializer_list<std::int64_t> v) { return v; }

}  // namespace

TEST_CASE("autocorrelation examples") {
  const auto r1 = autocorrelation(GridSet::full(1, 2));
  CHECK(r1.at(lag({-1})) == 1);
  CHECK(r1.at(lag({0})) == 2);
  CHECK(r1.at(lag({1})) == 1);
  CHECK(r1.at(lag({2})) == 0);
  const auto r2 = autocorrelation(GridSet::full(2, 3));
  CHECK(r2.at(lag({0, 0})) == 9);
  CHECK(r2.at(lag({1, 0})) == 6);
  CHECK(r2.at(lag({1, 1})) == 4);
}

TEST_CASE("autocorrelation: FFT table and sparse path agree with enumeration") {
  const GridSet b = gen_random_grid(2, 16, Rational(1, 2), 5);
  const auto dense = autocorrelation(b);
  const auto sparse = autocorrelation(b, 1);
  CHECK(dense.is_dense());
  CHECK_FALSE(sparse.is_dense());
  for (std::int64_t d0 = -15; d0 <= 15; ++d0) {
    for (std::int64_t d1 = -15; d1 <= 15; ++d1) {
      const std::vector<std::int64_t> v{d0, d1};
      const std::int64_t expect = grid_shift_intersect_count(b, v);
      CHECK(dense.at(v) == expect);
      CHECK(sparse.at(v) == expect);
    }
  }
  CHECK(dense.nonzero().size() == sparse.nonzero().size());
}

TEST_CASE("average count identity") {
  const auto full = average_count_identity(GridSet::full(2, 8), 0, 2);
  CHECK(full.direct == Rational(73, 2));
  CHECK(full.quadrature == doctest::Approx(36.5).epsilon(1e-10));
  const auto empty = average_count_identity(GridSet(2, 8), 0, 2);
  CHECK(empty.direct == 0);
  CHECK(std::abs(empty.quadrature) < 1e-12);
  const GridSet b = gen_random_grid(2, 8, Rational(1, 2), 3);
  const auto r = average_count_identity(b, 1, 2);
  CHECK(std::abs(r.quadrature - to_double(r.direct)) <= 1e-8 * std::max(1.0, to_double(r.direct)));
}

TEST_CASE("plancherel") {
  const std::vector<std::vector<std::int64_t>> one{{3, 2}};
  const auto s = plancherel_check(GridSet::from_points(2, 5, one));
  CHECK(s.lhs == doctest::Approx(1.0));
  CHECK(s.rhs == 1.0);
  const auto l = plancherel_check(GridSet::full(1, 4));
  CHECK(l.lhs == doctest::Approx(4.0));
  CHECK(l.rhs == 4.0);
  const GridSet b = gen_random_grid(2, 16, Rational(1, 2), 8);
  const auto p = plancherel_check(b);
  CHECK(std::abs(p.lhs - p.rhs) <= 1e-8 * p.rhs);
}

TEST_CASE("box_region_mass: trivial regions") {
  const GridSet b = gen_random_grid(2, 6, Rational(1, 2), 2);
  CHECK(box_region_mass(b, BoxRegion::full_torus(2)) == doctest::Approx(static_cast<double>(b.cardinality())));
  const std::vector<std::vector<std::int64_t>> one{{1, 1}};
  CHECK(box_region_mass(GridSet::from_points(2, 6, one), BoxRegion::full_torus(2)) == doctest::Approx(1.0));
  BoxRegion empty;
  empty.dimension = 2;
  CHECK(box_region_mass(b, empty) == 0.0);
}

TEST_CASE("box_region_mass: interval against closed form and Riemann sum") {
  const GridSet b = GridSet::full(1, 4);
  const BoxRegion box = BoxRegion::single_box({Rational(0)}, {Rational(1, 4)});
  // Σ_d r(d) sin(2π d w)/(π d) with w = 1/4 and r = 4,3,2,1.
  double expect = 4 * 0.5;
  for (int d = 1; d <= 3; ++d) expect += 2.0 * (4 - d) * std::sin(2 * std::numbers::pi * d * 0.25) / (std::numbers::pi * d);
  const double closed = box_region_mass(b, box);
  CHECK(closed == doctest::Approx(expect).epsilon(1e-12));
  const std::vector<std::int64_t> fine{4096};
  CHECK(riemann_mass(b, box, fine) == doctest::Approx(closed).epsilon(1e-6));
}

TEST_CASE("riemann_mass: full torus") {
  const GridSet b = gen_random_grid(2, 7, Rational(1, 2), 4);
  const BoxRegion t = BoxRegion::full_torus(2);
  const auto grid = riemann_grid(t, b.side());
  CHECK(std::abs(riemann_mass(b, t, grid) - static_cast<double>(b.cardinality())) <= 1e-4);
}

TEST_CASE("omega regions: closed form vs Riemann sum") {
  const ArcSystem sys = ArcSystem::make(Rational(1, 2), 2, BigInt(4), BigInt(2));
  const GridSet b = gen_random_grid(2, 8, Rational(1, 2), 6);
  for (bool pulled : {false, true}) {
    const BoxRegion region = omega_region(sys, pulled);
    CHECK_NOTHROW(region.validate());
    const double closed = box_region_mass(b, region);
    const double riemann = riemann_mass(b, region, riemann_grid(region, b.side()));
    CHECK(std::abs(closed - riemann) <= 0.02 * std::abs(closed));
  }
}

TEST_CASE("region validation") {
  BoxRegion overlap = BoxRegion::single_box({Rational(0)}, {Rational(1, 4)});
  overlap.components.push_back(overlap.components[0]);
  CHECK_THROWS_AS(overlap.validate(), ContractViolation);
}

TEST_CASE("nyquist grid is large enough for exact quadrature") {
  const auto g = nyquist_grid(2, 8, 1, 2);
  REQUIRE(g.size() == 2);
  CHECK(g[0] >= 2 * (8 - 1 + 3) + 1);
  CHECK(g[1] >= 2 * (8 - 1 + 9) + 1);
}
