#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <numbers>

#include "polyrec/error.hpp"
#include "polyrec/torus.hpp"
#include "polyrec/weyl.hpp"

using namespace polyrec;

namespace {

TorusPoint pt(std::vector<Rational> c) { return TorusPoint(std::move(c)); }

std::complex<double> naive_window(std::int64_t lambda, std::int64_t mu, std::int64_t q, const TorusPoint& a) {
  const auto x = a.float_view();
  std::complex<double> s = 0;
  std::int64_t terms = 0;
  for (std::int64_t n = lambda + 1; n <= lambda + mu; ++n) {
    if (n % q != 0) continue;
    double phase = 0;
    double power = 1;
    for (double c : x) {
      power *= static_cast<double>(n);
      phase += c * power;
    }
    s += std::polar(1.0, 2 * std::numbers::pi * phase);
    ++terms;
  }
  return s * (static_cast<double>(q) / static_cast<double>(mu));
}

}  // namespace

TEST_CASE("torus points reduce mod 1") {
  const auto a = pt({Rational(5, 4), Rational(-1, 3)});
  CHECK(a.coord(1) == Rational(1, 4));
  CHECK(a.coord(2) == Rational(2, 3));
  CHECK(TorusPoint::parse("1/2,3/4") == pt({Rational(1, 2), Rational(3, 4)}));
  CHECK(dilate(BigInt(4), a).coord(1) == Rational(0));
  CHECK_THROWS_AS(TorusPoint::parse("1/2,x"), ParseError);
}

TEST_CASE("weyl_S examples") {
  for (std::int64_t mu : {1, 5, 100}) {
    const auto s = weyl_S(mu, TorusPoint::zero(3));
    CHECK(s.real() == doctest::Approx(1.0));
    CHECK(std::abs(s.imag()) < 1e-12);
  }
  CHECK(std::abs(weyl_S(4, pt({Rational(1, 2)}))) < 1e-12);
  CHECK(std::abs(weyl_S(2, pt({Rational(0), Rational(1, 2)}))) < 1e-12);
}

TEST_CASE("weyl_S_window and weyl_S_div examples") {
  const auto a = pt({Rational(3, 7), Rational(1, 11)});
  CHECK(std::abs(weyl_S_window(0, 13, a) - weyl_S(13, a)) < 1e-12);
  CHECK(std::abs(weyl_S_window(1, 2, pt({Rational(1, 2)}))) < 1e-12);
  CHECK(std::abs(weyl_S_window(0, 12, TorusPoint::zero(2)) - 1.0) < 1e-12);
  CHECK(std::abs(weyl_S_div(0, 12, 3, TorusPoint::zero(2)) - 1.0) < 1e-12);
  CHECK(std::abs(weyl_S_div(5, 9, 1, a) - weyl_S_window(5, 9, a)) < 1e-12);
  CHECK(std::abs(weyl_S_div(0, 4, 2, pt({Rational(1, 2)})) - 1.0) < 1e-12);
  CHECK(std::abs(weyl_S_div(1, 4, 2, a) - naive_window(1, 4, 2, a)) < 1e-12);
  CHECK_THROWS_AS(weyl_S_div(1, 4, 0, a), ContractViolation);
}

TEST_CASE("exact fast path and big-denominator fallback agree with naive sums") {
  const auto small = pt({Rational(17, 97), Rational(5, 1031), Rational(2, 9)});
  CHECK(std::abs(weyl_S_window(6, 40, small) - naive_window(6, 40, 1, small)) < 1e-9);
  const Rational huge = ratio(BigInt("123456789012345678901234567"), BigInt("987654321098765432109876543211"));
  const auto big = pt({huge, Rational(1, 3)});
  CHECK(std::abs(weyl_S_window(0, 30, big) - naive_window(0, 30, 1, big)) < 1e-9);
  CHECK(std::abs(weyl_S_div(4, 20, 2, small) - naive_window(4, 20, 2, small)) < 1e-9);
}

TEST_CASE("T_lambda entries") {
  const TLambda t2 = t_lambda(2, BigInt(3));
  CHECK(t2.int64_entries() == std::vector<std::int64_t>{1, 6, 0, 1});
  const TLambda t3 = t_lambda(3, BigInt(2));
  CHECK(t3.int64_entries() == std::vector<std::int64_t>{1, 4, 12, 0, 1, 6, 0, 0, 1});
  CHECK(t3.determinant() == 1);
  CHECK(apply_t_lambda(t3, TorusPoint::zero(3)) == TorusPoint::zero(3));
  CHECK_THROWS_AS(t_lambda(2, BigInt(0)), ContractViolation);
}

TEST_CASE("T_lambda inverse and transpose") {
  const TLambda t(3, BigInt(5));
  std::uint64_t state = 3;
  for (int i = 0; i < 20; ++i) {
    const auto a = random_torus_point(3, state);
    CHECK(t.apply_inverse(t.apply(a)) == a);
    CHECK(t.apply(t.apply_inverse(a)) == a);
  }
  const std::vector<BigInt> d{BigInt(2), BigInt(-7), BigInt(11)};
  const auto x = t.inverse_transpose_apply(d);
  CHECK(t.transpose_apply(x) == d);
  // γ(n + λ) = γ(λ) + T_λ^T γ(n) in coordinates.
  const std::vector<BigInt> g2{BigInt(2), BigInt(4), BigInt(8)};
  const auto shifted = t.transpose_apply(g2);
  CHECK(shifted[0] + 5 == 7);
  CHECK(shifted[1] + 25 == 49);
  CHECK(shifted[2] + 125 == 343);
}

TEST_CASE("relation residuals") {
  const std::vector<TorusPoint> zero{TorusPoint::zero(2)};
  const auto r0 = relation_residuals(12, 6, 3, zero);
  CHECK(r0.max_r1 < 1e-12);
  CHECK(r0.max_r2 < 1e-12);
  CHECK(r0.max_r3 < 1e-12);

  std::uint64_t state = 11;
  std::vector<TorusPoint> pts;
  for (int i = 0; i < 64; ++i) pts.push_back(random_torus_point(2, state));
  const auto r = relation_residuals(12, 6, 3, pts);
  CHECK(r.max_r1 <= 1e-10);
  CHECK(r.max_r2 <= 1e-10);
  CHECK(r.max_r3 <= 1e-10);

  const auto single = relation_residuals(4, 1, 1, pts);
  CHECK(single.max_r2 <= 1e-12);
  CHECK_THROWS_AS(relation_residuals(5, 6, 3, pts), ContractViolation);
}

TEST_CASE("minor arc scan") {
  const auto s = minor_arc_scan(Rational(3, 10), 10000, 1, 10000, 7);
  CHECK(s.max_abs / 10000.0 < 1.0);
  CHECK(s.survivors + s.discarded == 10000);
  CHECK(s.survivors > 0);
  CHECK_THROWS_AS(minor_arc_scan(Rational(3, 10), 1, 1, 10, 7), ContractViolation);
  const auto again = minor_arc_scan(Rational(3, 10), 10000, 1, 10000, 7);
  CHECK(again.max_abs == s.max_abs);
}

TEST_CASE("random_torus_point is reproducible") {
  std::uint64_t a = 5, b = 5;
  CHECK(random_torus_point(3, a) == random_torus_point(3, b));
  CHECK(a == b);
}
