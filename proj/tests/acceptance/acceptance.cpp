// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polyrec/arcs.hpp"
#include "polyrec/construct.hpp"
#include "polyrec/generators.hpp"
#include "polyrec/profile.hpp"
#include "polyrec/smooth.hpp"
#include "polyrec/spectral.hpp"
#include "polyrec/weyl.hpp"

using namespace polyrec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> body;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

Polynomial random_poly(std::mt19937_64& rng) {
  const int k = 1 + static_cast<int>(rng() % 3);
  std::vector<std::int64_t> c(static_cast<std::size_t>(k));
  for (auto& x : c) x = static_cast<std::int64_t>(rng() % 7) - 3;
  if (c.back() == 0) c.back() = 1 + static_cast<std::int64_t>(rng() % 3);
  return Polynomial(std::move(c));
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240101);
  int mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    const std::int64_t n = 16 + static_cast<std::int64_t>(rng() % (4096 - 16 + 1));
    const Polynomial p = random_poly(rng);
    const Rational density(1 + static_cast<long>(rng() % 9), 10);
    const DenseSet a = gen_random_set(n, density, rng());
    const std::int64_t l = integer_root(n, p.degree());
    if (profile_fft(a, p, l).counts != profile_direct(a, p, l).counts) ++mismatches;
  }
  return {mismatches == 0, "100 instances, " + std::to_string(mismatches) + " mismatches"};
}

Outcome counting_identity() {
  std::mt19937_64 rng(77);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const int k = 1 + static_cast<int>(rng() % 2);
    const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 15);
    const std::int64_t mu = 1 + static_cast<std::int64_t>(rng() % 4);
    const std::int64_t lambda = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(5 - mu));
    const GridSet b = gen_random_grid(k, m, Rational(1, 2), rng());
    const CountIdentity r = average_count_identity(b, lambda, mu);
    const double direct = to_double(r.direct);
    const double rel = std::abs(r.quadrature - direct) / std::max(1.0, std::abs(direct));
    worst = std::max(worst, rel);
  }
  return {worst <= 1e-8, "max relative error " + fmt(worst)};
}

Outcome weyl_relations() {
  struct Tuple {
    int k;
    std::int64_t lambda, mu, q;
  };
  const std::vector<Tuple> tuples{{1, 4, 2, 2},  {1, 30, 10, 5}, {2, 12, 6, 3},   {2, 20, 20, 4},
                                  {2, 7, 3, 1},  {3, 18, 9, 3},  {3, 100, 50, 5}, {4, 8, 8, 2},
                                  {2, 1000, 600, 10}, {3, 6, 1, 1}};
  double worst = 0;
  std::uint64_t state = 99;
  for (const auto& t : tuples) {
    std::vector<TorusPoint> pts;
    for (int i = 0; i < 64; ++i) pts.push_back(random_torus_point(t.k, state));
    const auto r = relation_residuals(t.lambda, t.mu, t.q, pts);
    worst = std::max({worst, r.max_r1, r.max_r2, r.max_r3});
  }
  return {worst <= 1e-10, "10 tuples x 64 points, max residual " + fmt(worst)};
}

Outcome arc_geometry() {
  int bound_failures = 0, divisibility_failures = 0, checked_q = 0;
  for (int k = 1; k <= 3; ++k) {
    for (std::int64_t m = 2;; ++m) {
      const Rational eta(1, m);
      const std::int64_t r = eta_radius(eta, k);
      if (r > 300) break;
      const BigInt q = q_eta(eta, k);
      ++checked_q;
      for (std::int64_t j = 1; j <= r; ++j) {
        if (q % j != 0) ++divisibility_failures;
      }
      long exp2 = 0;
      const double mant = mpz_get_d_2exp(&exp2, q.get_mpz_t());
      const double log_q = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
      if (log_q > 2.0 * static_cast<double>(r)) ++bound_failures;
    }
  }

  struct Chain {
    Rational eta;
    int k;
    BigInt start;
    BigInt growth;
    int length;
  };
  const std::vector<Chain> chains{{Rational(1, 5), 1, BigInt(300), BigInt(80), 4},
                                  {Rational(1, 3), 1, BigInt(200), BigInt(30), 5},
                                  {Rational(1, 2), 2, BigInt(1000), BigInt(50), 4},
                                  {Rational(1, 3), 2, BigInt(22680), BigInt(250), 3},
                                  {Rational(1, 2), 3, BigInt(6720), BigInt(200), 3}};
  int violations = 0;
  std::int64_t samples = 0, planted_hits = 0;
  std::mt19937_64 rng(5);
  std::uint64_t state = 17;
  for (const auto& c : chains) {
    std::vector<Window> windows;
    BigInt mu = c.start;
    for (int j = 0; j < c.length; ++j) {
      windows.push_back({mu, mu});
      mu *= c.growth;
    }
    validate_window_chain(c.eta, c.k, windows);
    std::vector<ArcSystem> systems;
    for (const auto& w : windows) systems.push_back(ArcSystem::make(c.eta, c.k, w.lambda, w.mu));
    for (int i = 0; i < 10000; ++i) {
      const bool planted = i % 2 == 0;
      const TorusPoint a = planted ? sample_pulled_back_omega(systems[static_cast<std::size_t>(i / 2) % systems.size()], rng)
                                   : random_torus_point(c.k, state);
      const int count = overlap_count(a, systems);
      if (count > c.k) ++violations;
      if (planted && count >= 1) ++planted_hits;
      ++samples;
    }
  }
  const bool ok = bound_failures == 0 && divisibility_failures == 0 && violations == 0;
  return {ok, std::to_string(checked_q) + " q_eta values (divisibility failures " +
                  std::to_string(divisibility_failures) + ", bound failures " + std::to_string(bound_failures) +
                  "); 5 chains x 10^4 points, " + std::to_string(violations) + " overlap violations, " +
                  std::to_string(planted_hits) + " planted hits"};
}

Outcome counterexample_suite() {
  int failures = 0;
  for (const auto& p : {Polynomial({0, 1}), Polynomial({0, 0, 1}), Polynomial({1, 1})}) {
    for (std::int64_t l = 1; l <= 8; ++l) {
      const auto d = counterexample_build(p, l);
      if (!counterexample_verify(d, p, l, 5)) ++failures;
    }
  }
  const auto d = counterexample_build(Polynomial({0, 1}), 2);
  const bool example = d.a == 3 && d.M == 36 && d.block_lo == 37 && d.block_hi == 72;
  return {failures == 0 && example, "24 (P, L) pairs, " + std::to_string(failures) +
                                        " failures; P=n^2, L=2 gives a=" + std::to_string(d.a) +
                                        ", M=" + std::to_string(d.M) + ", block [" + std::to_string(d.block_lo) +
                                        "," + std::to_string(d.block_hi) + "]"};
}

Outcome decomposition_identities() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_point = 0, worst_split = 0, smallest_whole = 1e300;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> v(32 * 32);
    for (auto& x : v) x = u(rng);
    const auto f = WeightedFunction::from_values(2, 32, std::move(v));
    const auto d = decompose(f, BigInt(2), Rational(4), Rational(2), 0, 0);
    for (std::size_t i = 0; i < d.f.values.size(); ++i) {
      worst_point = std::max(worst_point, std::abs(d.f.values[i] - (d.f1.values[i] + d.f2.values[i] + d.f3.values[i])));
    }
    const auto s = splitting_check(d, 2, 0, 4);
    smallest_whole = std::min(smallest_whole, std::abs(s.whole));
    worst_split = std::max(worst_split, std::abs(s.residual()) / std::max(1.0, std::abs(s.whole)));
  }
  return {worst_point <= 1e-10 && worst_split <= 1e-8,
          "20 functions, pointwise " + fmt(worst_point) + ", splitting relative " + fmt(worst_split) +
              " (smallest |Lambda(f,f)| " + fmt(smallest_whole) + ")"};
}

Outcome cutoff_support() {
  const LatticeCutoff cut{BigInt(3), Rational(20), 2, std::nullopt};
  const BoxFamily family{cut.q, cut.L, cut.k};
  std::uint64_t state = 123;
  int tested = 0, nonzero = 0;
  while (tested < 1000) {
    const TorusPoint a = random_torus_point(2, state);
    if (in_major_box(a, family)) continue;
    ++tested;
    if (phi_hat_qL(cut, a) != 0.0) ++nonzero;
  }
  return {nonzero == 0, "1000 off-box points, " + std::to_string(nonzero) + " nonzero"};
}

Outcome spectral_cross_oracle() {
  struct Instance {
    int k;
    std::int64_t side;
    Rational eta;
    std::int64_t lambda, mu;
    bool pullback;
  };
  const std::vector<Instance> suite{
      {1, 24, Rational(1, 2), 8, 8, false},  {1, 40, Rational(1, 3), 12, 6, false},
      {1, 32, Rational(1, 4), 20, 10, false}, {1, 64, Rational(1, 2), 30, 30, false},
      {2, 8, Rational(1, 2), 8, 8, false},    {2, 10, Rational(1, 2), 6, 3, false},
      {2, 8, Rational(1, 2), 8, 4, true},     {2, 10, Rational(1, 2), 6, 3, true},
      {2, 12, Rational(1, 2), 8, 4, true},    {1, 48, Rational(1, 3), 18, 9, true}};
  double worst = 0, worst_plancherel = 0;
  std::uint64_t seed = 500;
  for (const auto& in : suite) {
    const GridSet b = gen_random_grid(in.k, in.side, Rational(1, 2), seed++);
    const ArcSystem sys = ArcSystem::make(in.eta, in.k, BigInt(in.lambda), BigInt(in.mu));
    const BoxRegion region = omega_region(sys, in.pullback);
    const double closed = box_region_mass(b, region);
    const double riemann = riemann_mass(b, region, riemann_grid(region, b.side()));
    worst = std::max(worst, std::abs(closed - riemann) / std::max(std::abs(closed), 1e-300));
    if (std::getenv("POLYREC_ACCEPTANCE_VERBOSE")) std::printf("  k=%d M=%lld closed=%.8g riemann=%.8g\n", in.k, static_cast<long long>(in.side), closed, riemann);
    const auto p = plancherel_check(b);
    worst_plancherel = std::max(worst_plancherel, std::abs(p.lhs - p.rhs) / std::max(1.0, p.rhs));
  }
  return {worst <= 0.02 && worst_plancherel <= 1e-8,
          "10 instances, max relative gap " + fmt(worst) + ", Plancherel " + fmt(worst_plancherel)};
}

Outcome khintchine() {
  KhintchineConfig cfg;
  cfg.universe_size = 10000;
  cfg.poly = Polynomial::monomial(2);
  cfg.epsilon = Rational(1, 100);
  cfg.trials = 20;
  cfg.seed = 1;
  cfg.generator = SetGenerator::parse("random:1/2");
  const auto s = khintchine_experiment(cfg);
  return {s.min_positive_density >= 0.5, "20 seeds, return-time density over [1," + std::to_string(s.range_end) +
                                             "]: min " + fmt(s.min_positive_density) + ", mean " +
                                             fmt(s.mean_positive_density) + " (floor 0.5)"};
}

Outcome lift_inclusion() {
  struct Case {
    Polynomial p;
    std::string gen;
    std::int64_t n;
    Rational eps;
    std::int64_t range_end;
  };
  const std::vector<Case> suite{{Polynomial({0, 1}), "random:1/2", 2000, Rational(1, 10), 10},
                                {Polynomial({1, 1, 1}), "random:1/2", 2000, Rational(1, 10), 8},
                                {Polynomial({2}), "ap:2+0", 200, Rational(1, 5), 6},
                                {Polynomial({2, 2}), "random:1/2", 2000, Rational(1, 10), 10},
                                {Polynomial({3, 3}), "random:1/3", 2000, Rational(1, 10), 10},
                                {Polynomial({0, 3}), "union(ap:3+0,interval:1-300)", 1500, Rational(1, 10), 10}};
  int failures = 0;
  std::string moduli;
  std::uint64_t seed = 3;
  for (const auto& c : suite) {
    const DenseSet a = SetGenerator::parse(c.gen).generate(c.n, seed++);
    const LiftResult r = lift_finite(a, c.p, c.eps, c.range_end, LiftOptions{Rational(1, 4), std::nullopt, 1'000'000});
    if (!verify_lift_inclusion(a, c.p, c.eps, c.range_end, r)) ++failures;
    moduli += (moduli.empty() ? "" : ",") + std::to_string(r.modulus);
  }
  return {failures == 0, "6 lifts (moduli " + moduli + "), " + std::to_string(failures) + " failures"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence profile_fft == profile_direct", 60, oracle_equivalence},
      {2, "counting identity direct vs quadrature", 120, counting_identity},
      {3, "Weyl-sum relations", 10, weyl_relations},
      {4, "arc geometry and overlap bound", 60, arc_geometry},
      {5, "counterexample suite", 10, counterexample_suite},
      {6, "decomposition identities", 120, decomposition_identities},
      {7, "cutoff support", 10, cutoff_support},
      {8, "spectral cross-oracle", 300, spectral_cross_oracle},
      {9, "Khintchine desk experiment", 60, khintchine},
      {10, "lift inclusion", 60, lift_inclusion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d: %s -- %s [%.2f s of %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.budget_seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
