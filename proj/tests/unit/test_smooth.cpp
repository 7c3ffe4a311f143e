#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "polyrec/arcs.hpp"
#include "polyrec/error.hpp"
#include "polyrec/generators.hpp"
#include "polyrec/smooth.hpp"
#include "polyrec/weyl.hpp"

using namespace polyrec;

namespace {

WeightedFunction random_function(int k, std::int64_t side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(std::pow(side, k)));
  for (auto& x : v) x = u(rng);
  return WeightedFunction::from_values(k, side, std::move(v));
}

}  // namespace

TEST_CASE("base cutoff: frequency side is the self-convolution of cos^2") {
  CHECK(cutoff::w(0.0) == doctest::Approx(1.0));
  CHECK(cutoff::w(1.0) == 0.0);
  CHECK(cutoff::w(-1.5) == 0.0);
  // Numerical self-convolution of b(ξ) = cos²(πξ) on [-1/2, 1/2], rescaled so w(0) = 1.
  for (double xi : {0.1, 0.37, 0.5, 0.8}) {
    const int steps = 20000;
    double acc = 0;
    for (int i = 0; i < steps; ++i) {
      const double t = -0.5 + (i + 0.5) / steps;
      const double s = xi - t;
      if (std::abs(s) <= 0.5) acc += std::pow(std::cos(std::numbers::pi * t), 2) * std::pow(std::cos(std::numbers::pi * s), 2);
    }
    acc /= steps;
    CHECK(cutoff::w(xi) == doctest::Approx(acc / 0.375).epsilon(1e-6));
    CHECK(cutoff::w(-xi) == cutoff::w(xi));
  }
}

TEST_CASE("base cutoff: space side") {
  CHECK(cutoff::w_check(0.0) == doctest::Approx(2.0 / 3.0));
  CHECK(cutoff::w_check(1.0) == doctest::Approx(1.0 / 6.0));
  CHECK(cutoff::w_check(1.0 + 1e-9) == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
  CHECK(cutoff::w_check(0.999999) == doctest::Approx(1.0 / 6.0).epsilon(1e-5));
  CHECK(cutoff::w_check(2.0) == doctest::Approx(0.0));
  CHECK(cutoff::w_check(cutoff::kTruncationRadius) < 1e-12);
  // Inverse transform at a point, by quadrature of w.
  for (double x : {0.3, 1.7, 2.5}) {
    const int steps = 40000;
    double acc = 0;
    for (int i = 0; i < steps; ++i) {
      const double xi = -1.0 + (i + 0.5) * 2.0 / steps;
      acc += cutoff::w(xi) * std::cos(2 * std::numbers::pi * xi * x);
    }
    acc *= 2.0 / steps;
    CHECK(cutoff::w_check(x) == doctest::Approx(acc).epsilon(1e-6));
  }
}

TEST_CASE("phi_hat normalization and support") {
  const LatticeCutoff cut{BigInt(3), Rational(5), 2, std::nullopt};
  CHECK(phi_hat_qL(cut, TorusPoint::zero(2)) == doctest::Approx(1.0).epsilon(1e-6));
  std::uint64_t state = 1;
  int off_box = 0;
  for (int i = 0; i < 300; ++i) {
    const TorusPoint a = random_torus_point(2, state);
    if (!in_major_box(a, BoxFamily{cut.q, cut.L, cut.k})) {
      ++off_box;
      CHECK(phi_hat_qL(cut, a) == 0.0);
    }
  }
  CHECK(off_box > 50);
}

TEST_CASE("phi_qL on and off the lattice") {
  const LatticeCutoff cut{BigInt(2), Rational(3), 2, std::nullopt};
  const std::vector<std::int64_t> off{1, 4};
  CHECK(phi_qL(cut, off) == 0.0);
  const std::vector<std::int64_t> on{2, 4};
  CHECK(phi_qL(cut, on) > 0.0);
  const std::vector<std::int64_t> off2{2, 2};
  CHECK(phi_qL(cut, off2) == 0.0);
}

TEST_CASE("psi_hat") {
  const TorusPoint zero = TorusPoint::zero(2);
  const LatticeCutoff plain{BigInt(2), Rational(4), 2, std::nullopt};
  LatticeCutoff sheared = plain;
  sheared.shear = BigInt(7);
  CHECK(psi_hat(sheared, zero) == doctest::Approx(phi_hat_qL(plain, zero)));
  CHECK_THROWS_AS(psi_hat(plain, zero), ContractViolation);
  LatticeCutoff one_d{BigInt(2), Rational(4), 1, BigInt(9)};
  const LatticeCutoff one_d_plain{BigInt(2), Rational(4), 1, std::nullopt};
  std::uint64_t state = 4;
  for (int i = 0; i < 50; ++i) {
    const TorusPoint a = random_torus_point(1, state);
    CHECK(psi_hat(one_d, a) == phi_hat_qL(one_d_plain, a));
  }
  const TLambda t(2, BigInt(7));
  for (int i = 0; i < 100; ++i) {
    const TorusPoint a = random_torus_point(2, state);
    if (!in_major_box(t.apply(a), BoxFamily{plain.q, plain.L, 2})) CHECK(psi_hat(sheared, a) == 0.0);
  }
}

TEST_CASE("lambda_count examples") {
  const auto g = WeightedFunction::indicator(GridSet::full(1, 10));
  CHECK(lambda_count(g, g, 1, 0, 2) == doctest::Approx(8.5));
  CHECK(lambda_count(g, g, 2, 0, 4) == doctest::Approx(7.0));
  CHECK(lambda_count(g, WeightedFunction::zeros(1, 10), 1, 0, 2) == 0.0);
}

TEST_CASE("decomposition identities") {
  const auto f = random_function(2, 12, 3);
  const auto d = decompose(f, BigInt(2), Rational(3), Rational(2), 2, 0);
  double worst = 0;
  for (std::size_t i = 0; i < d.f.values.size(); ++i) {
    worst = std::max(worst, std::abs(d.f.values[i] - (d.f1.values[i] + d.f2.values[i] + d.f3.values[i])));
  }
  CHECK(worst <= 1e-10);
  const auto s = splitting_check(d, 2, 0, 2);
  CHECK(s.whole > 1.0);
  CHECK(std::abs(s.residual()) <= 1e-8 * std::max(1.0, std::abs(s.whole)));

  const auto zero = decompose(WeightedFunction::zeros(2, 8), BigInt(2), Rational(3), Rational(2), 5, 0);
  for (double v : zero.f1.values) CHECK(v == 0.0);
  for (double v : zero.f3.values) CHECK(v == 0.0);
  CHECK_THROWS_AS(decompose(f, BigInt(2), Rational(2), Rational(3), 5, 0), ContractViolation);
}

TEST_CASE("convolution of a constant is constant in the interior") {
  std::vector<double> ones(40 * 40, 0.5);
  const auto f = WeightedFunction::from_values(2, 40, std::move(ones));
  const LatticeCutoff cut{BigInt(1), Rational(2), 2, std::nullopt};
  const auto g = convolve(f, cut, 0);
  const std::vector<std::int64_t> centre{20, 20};
  CHECK(std::abs(g.at(centre) - 0.5) <= 1e-5);
}

TEST_CASE("eta_epsilon") {
  CHECK(eta_epsilon(Rational(1, 2), 1.0) > 0);
  CHECK(eta_epsilon(Rational(1, 4), 1.0) < eta_epsilon(Rational(1, 2), 1.0));
  CHECK_THROWS_AS(eta_epsilon(Rational(0), 1.0), ContractViolation);
}

TEST_CASE("dichotomy on structured sets") {
  const auto full = dichotomy_report(GridSet::full(1, 200), Rational(1, 10), 4, 4, Rational(1, 2));
  CHECK(full.branch1.count == 4);
  CHECK(full.branch1.holds);
  const auto lattice = dichotomy_report(GridSet::from_cells(1, 200, [] {
    std::vector<std::uint8_t> c(200, 0);
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = 1;
    return c;
  }()), Rational(1, 10), 4, 4, Rational(1, 2));
  CHECK(lattice.branch1.count == 2);
  CHECK(lattice.branch1.holds);
  const GridSet b = gen_random_grid(2, 32, Rational(1, 2), 2);
  const auto random = dichotomy_report(b, Rational(1, 20), 1, 1, Rational(1, 2));
  CHECK(random.branch1.holds);
  CHECK(random.branch2.mass < random.branch2.threshold);
  const auto again = dichotomy_report(b, Rational(1, 20), 1, 1, Rational(1, 2));
  CHECK(again.branch2.mass == random.branch2.mass);
  CHECK_THROWS_AS(dichotomy_report(b, Rational(1, 20), 1, 2, Rational(1, 2)), ContractViolation);
}
