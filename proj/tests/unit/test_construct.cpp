#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "polyrec/construct.hpp"
#include "polyrec/error.hpp"
#include "polyrec/generators.hpp"
#include "polyrec/profile.hpp"

using namespace polyrec;

TEST_CASE("bezout vector reaches the content") {
  for (const auto& p : {Polynomial({2}), Polynomial({0, 1}), Polynomial({3, 6}), Polynomial({6, 10, 15}),
                        Polynomial({-4, 6}), Polynomial({0, 0, 7})}) {
    const auto u = bezout_vector(p);
    CHECK(linear_form(p, u) == p.content());
  }
}

TEST_CASE("lift_tile is the preimage of A under the linear form") {
  const DenseSet a = gen_random_set(200, Rational(1, 2), 4);
  const Polynomial p({2, 3});
  const GridSet b = lift_tile(a, p, 7, 11);
  for (const auto& pt : GridSet::full(2, 7).members()) {
    const std::int64_t v = linear_form(p, pt) + 11;
    CHECK(b.contains(pt) == (v >= 1 && v <= 200 && a.contains(v)));
  }
}

TEST_CASE("lift for P = 2n on the even numbers") {
  const DenseSet a = gen_structured_set(20, "ap:2+0");
  const Polynomial p({2});
  const LiftResult r = lift_finite(a, p, Rational(1, 5), 4, LiftOptions{Rational(1, 2), std::nullopt, 10'000'000});
  CHECK(r.modulus == 2);
  CHECK(r.residue == 0);
  CHECK(r.class_size == 10);
  CHECK(r.lifted.dimension() == 1);
  CHECK(r.side == 5);
  // 1-D lift of a progression is an interval.
  const auto members = r.lifted.members();
  REQUIRE_FALSE(members.empty());
  CHECK(members.back()[0] - members.front()[0] + 1 == static_cast<std::int64_t>(members.size()));
  CHECK(verify_lift_inclusion(a, p, Rational(1, 5), 4, r));
}

TEST_CASE("lift for P = n^2: B' has the density of A inside Q") {
  const DenseSet a = gen_random_set(60, Rational(1, 2), 9);
  const Polynomial p({0, 1});
  const LiftResult r = lift_finite(a, p, Rational(1, 10), 7, LiftOptions{Rational(1, 4), std::nullopt, 10'000'000});
  REQUIRE(r.q_size.has_value());
  REQUIRE(r.b_prime_size.has_value());
  // Preimages of 𝒫(b) = b2 over [-N', N']^2: every value has 2N'+1 preimages.
  const std::int64_t per_value = 2 * r.n_prime + 1;
  CHECK(*r.q_size == 60 * per_value);
  CHECK(*r.b_prime_size == a.cardinality() * per_value - (a.contains(0) ? per_value : 0));
  CHECK(ratio(BigInt(*r.b_prime_size), BigInt(*r.q_size)) == ratio(BigInt(a.cardinality()), BigInt(60)));
  CHECK(verify_lift_inclusion(a, p, Rational(1, 10), 7, r));
}

TEST_CASE("lift contracts and corrupted lifts") {
  CHECK_THROWS_AS(lift_finite(DenseSet(30), Polynomial({0, 1}), Rational(1, 10), 3), ContractViolation);

  const DenseSet a = gen_structured_set(1000, "ap:5+0");
  const Polynomial p({0, 1});
  const Rational eps(1, 100);
  LiftResult r = lift_finite(a, p, eps, 5, LiftOptions{Rational(1, 2), std::nullopt, 1000});
  CHECK(verify_lift_inclusion(a, p, eps, 5, r));
  r.lifted = GridSet::full(2, 500);
  CHECK_FALSE(verify_lift_inclusion(a, p, eps, 5, r));
  CHECK(verify_lift_inclusion(a, p, eps, 0, r));
}

TEST_CASE("counterexample_build examples") {
  const auto d = counterexample_build(Polynomial({0, 1}), 2);
  CHECK(d.a == 3);
  CHECK(d.M == 36);
  CHECK(d.period == 108);
  CHECK(d.block_lo == 37);
  CHECK(d.block_hi == 72);
  CHECK(d.lambda(0) == 6);
  CHECK(d.lambda(2) == 222);
  const auto lin = counterexample_build(Polynomial({1}), 1);
  CHECK(lin.a == 1);
  CHECK(lin.M == 1);
  CHECK(lin.period == 3);
  CHECK(lin.block_lo == 2);
  CHECK(lin.block_hi == 2);
  CHECK_THROWS_AS(counterexample_build(Polynomial({0, -1}), 2), ContractViolation);
  CHECK(counterexample_build(Polynomial({0, 0, 1}), 8).a == 4);
}

TEST_CASE("counterexample_build respects monotonicity and positivity") {
  // P(n) = n^2 - 5n dips below zero and decreases on [0, 2].
  const Polynomial p({-5, 1});
  const auto d = counterexample_build(p, 1);
  const std::int64_t x = d.a * d.L;
  CHECK(eval_poly(p, x) >= 1);
  CHECK(2 * eval_poly(p, x) >= eval_poly(p, x + d.L));
  for (std::int64_t y = x; y < x + 50; ++y) CHECK(eval_poly(p, y + 1) > eval_poly(p, y));
  CHECK(counterexample_verify(d, p, 1, 5));
}

TEST_CASE("counterexample_verify") {
  const Polynomial sq({0, 1});
  const auto d = counterexample_build(sq, 2);
  CHECK(counterexample_verify(d, sq, 2, 3));
  CHECK(counterexample_verify(d, sq, 0, 3));
  auto widened = d;
  widened.block_lo = d.M;
  CHECK_FALSE(counterexample_verify(widened, sq, 2, 3));
}

TEST_CASE("materialized counterexample has density one third") {
  const auto d = counterexample_build(Polynomial({1, 1}), 3);
  for (std::int64_t periods : {1, 2, 5}) {
    const DenseSet a = materialize(d, d.period * periods);
    CHECK(ratio(BigInt(a.cardinality()), BigInt(a.universe_size())) == Rational(1, 3));
  }
}
