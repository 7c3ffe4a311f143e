#include "polyrec/error.hpp"
#include "polyrec/smooth.hpp"
#include "polyrec/spectral.hpp"

namespace polyrec {

DichotomyReport dichotomy_report(const GridSet& b, const Rational& epsilon, std::int64_t lambda,
                                 std::int64_t mu, const Rational& eta,
                                 const DichotomyOptions& options) {
  if (epsilon <= 0 || epsilon > 1) throw ContractViolation("epsilon must lie in (0, 1]");
  if (mu < 1 || mu > lambda) throw ContractViolation("dichotomy needs 1 <= mu <= lambda");
  const int k = b.dimension();
  const ArcSystem sys = ArcSystem::make(eta, k, from_int64(lambda), from_int64(mu));

  DichotomyReport r;
  const BigInt universe = pow(from_int64(b.side()), static_cast<unsigned long>(k));
  const BigInt card = from_int64(b.cardinality());
  r.delta = ratio(card, universe);
  r.q = sys.q;
  r.radius = sys.radius;
  r.outer_degenerate = sys.outer().degenerate();

  // count * U > |B|^2 - ε U^2, cleared of the denominator of ε.
  const BigInt en = epsilon.get_num();
  const BigInt ed = epsilon.get_den();
  const BigInt rhs = card * card * ed - en * universe * universe;
  for (std::int64_t n = lambda + 1; n <= lambda + mu; ++n) {
    const auto v = curve_point(k, n);
    const BigInt c = from_int64(grid_shift_intersect_count(b, v));
    if (c * universe * ed > rhs) ++r.branch1.count;
  }
  r.branch1.threshold = options.branch1_constant * to_double(epsilon) * static_cast<double>(mu) /
                        to_double(Rational(sys.q));
  r.branch1.holds = static_cast<double>(r.branch1.count) >= r.branch1.threshold;

  r.branch2.mass = box_region_mass(b, omega_region(sys, true));
  r.branch2.threshold = to_double(epsilon * Rational(universe)) / 10.0;
  r.branch2.holds = r.branch2.mass >= r.branch2.threshold;
  return r;
}

}  // namespace polyrec
