#include <algorithm>
#include <limits>
#include <vector>

#include "polyrec/checked.hpp"
#include "polyrec/construct.hpp"
#include "polyrec/error.hpp"

namespace polyrec {

namespace {

BigInt eval_big(const Polynomial& p, const BigInt& x) {
  BigInt acc = 0;
  for (int i = p.degree(); i >= 1; --i) acc = (acc + p.coeff(i)) * x;
  return acc;
}

// Largest integer x >= 0 with P(x+1) <= P(x), or -1 if there is none.
std::int64_t last_non_increase(const Polynomial& p, std::int64_t search_bound) {
  const int k = p.degree();
  if (k == 1) return -1;
  // ΔP(x) = P(x+1) - P(x) has degree k-1; coefficients via binomial expansion.
  std::vector<BigInt> delta(static_cast<std::size_t>(k), 0);
  for (int i = 1; i <= k; ++i) {
    BigInt binom = 1;
    for (int r = 0; r < i; ++r) {
      delta[static_cast<std::size_t>(r)] += binom * p.coeff(i);
      binom = binom * (i - r) / (r + 1);
    }
  }
  const BigInt& top = delta.back();
  BigInt max_abs = 0;
  for (std::size_t r = 0; r + 1 < delta.size(); ++r) max_abs = std::max<BigInt>(max_abs, abs(delta[r]));
  const BigInt bound = 1 + (max_abs + abs(top) - 1) / abs(top) + 1;
  if (bound > search_bound) {
    throw NotFoundError("monotonicity threshold exceeds the search bound");
  }
  for (std::int64_t x = bound.get_si(); x >= 0; --x) {
    BigInt v = 0;
    for (int r = k - 1; r >= 0; --r) v = v * x + delta[static_cast<std::size_t>(r)];
    if (v <= 0) return x;
  }
  return -1;
}

}  // namespace

std::int64_t PeriodicSetDescriptor::lambda(std::int64_t j) const {
  return checked::add(checked::mul(period, j), checked::mul(a, L));
}

std::string PeriodicSetDescriptor::lambda_formula() const {
  return std::to_string(period) + "*j + " + std::to_string(checked::mul(a, L));
}

bool PeriodicSetDescriptor::contains(std::int64_t x) const {
  const std::int64_t r = ((x % period) + period) % period;
  return r >= block_lo && r <= block_hi;
}

PeriodicSetDescriptor counterexample_build(const Polynomial& p, std::int64_t L, std::int64_t search_bound) {
  if (p.leading() <= 0) throw ContractViolation("counterexample_build needs a positive leading coefficient");
  if (L < 1) throw ContractViolation("window length L must be >= 1");
  const std::int64_t x0 = last_non_increase(p, search_bound) + 1;
  for (std::int64_t a = 1; a <= search_bound; ++a) {
    const BigInt x = BigInt(checked::mul(a, L));
    if (x < x0) continue;
    const BigInt m = eval_big(p, x);
    if (m < 1) continue;
    if (2 * m < eval_big(p, x + L)) continue;
    if (!m.fits_slong_p() || m > BigInt(std::numeric_limits<std::int64_t>::max() / 3)) {
      throw OverflowError("P(aL) does not fit the descriptor");
    }
    PeriodicSetDescriptor d;
    d.a = a;
    d.L = L;
    d.M = m.get_si();
    d.period = 3 * d.M;
    d.block_lo = d.M + 1;
    d.block_hi = 2 * d.M;
    return d;
  }
  throw NotFoundError("no valid multiplier a up to " + std::to_string(search_bound));
}

DenseSet materialize(const PeriodicSetDescriptor& desc, std::int64_t window) {
  std::vector<std::int64_t> members;
  for (std::int64_t x = 1; x <= window; ++x) {
    if (desc.contains(x)) members.push_back(x);
  }
  return DenseSet::from_members(window, members);
}

bool counterexample_verify(const PeriodicSetDescriptor& desc, const Polynomial& p, std::int64_t L,
                           std::int64_t j_max) {
  if (desc.period < 1) throw ContractViolation("descriptor period must be positive");
  const std::int64_t window = checked::mul(desc.period, checked::add(j_max, 2));
  std::vector<std::int64_t> members;
  for (std::int64_t x = 1; x <= window; ++x) {
    if (desc.contains(x)) members.push_back(x);
  }
  const BigInt big_window = window;
  for (std::int64_t j = 0; j <= j_max; ++j) {
    const std::int64_t lo = desc.lambda(j);
    for (std::int64_t n = lo; n <= lo + L; ++n) {
      BigInt d = eval_big(p, BigInt(n)) % big_window;
      if (d < 0) d += big_window;
      const std::int64_t shift = d.get_si();
      for (std::int64_t x : members) {
        std::int64_t y = x - shift;
        if (y < 1) y += window;
        if (desc.contains(y)) return false;
      }
    }
  }
  return true;
}

}  // namespace polyrec
