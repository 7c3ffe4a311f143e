#include "polyrec/profile.hpp"

#include <algorithm>

#include "polyrec/checked.hpp"
#include "polyrec/error.hpp"
#include "polyrec/fft.hpp"
#include "polyrec/parallel.hpp"

namespace polyrec {

namespace {

void check_range(std::int64_t range_end) {
  if (range_end < 0) throw ContractViolation("profile range end L must be >= 0");
}

std::vector<std::int64_t> poly_shifts(const Polynomial& p, std::int64_t range_end) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(range_end + 1));
  for (std::int64_t n = 0; n <= range_end; ++n) out[static_cast<std::size_t>(n)] = eval_poly(p, n);
  return out;
}

RecurrenceProfile make_set_profile(const DenseSet& a, const std::vector<std::int64_t>& shifts) {
  RecurrenceProfile prof;
  prof.universe_size = a.universe_size();
  prof.set_cardinality = a.cardinality();
  prof.counts.assign(shifts.size(), 0);
  prof.shifts.reserve(shifts.size());
  for (auto s : shifts) prof.shifts.push_back({s});
  return prof;
}

}  // namespace

RecurrenceProfile profile_direct(const DenseSet& a, const Polynomial& p, std::int64_t range_end) {
  check_range(range_end);
  const auto shifts = poly_shifts(p, range_end);
  auto prof = make_set_profile(a, shifts);
  parallel_for(shifts.size(), [&](std::size_t n) {
    prof.counts[n] = shift_intersect_count(a, shifts[n]);
  });
  return prof;
}

RecurrenceProfile profile_fft(const DenseSet& a, const Polynomial& p, std::int64_t range_end,
                              std::int64_t fft_budget) {
  check_range(range_end);
  const auto shifts = poly_shifts(p, range_end);
  auto prof = make_set_profile(a, shifts);
  if (a.empty()) return prof;
  const std::int64_t n = a.universe_size();
  std::vector<double> indicator(static_cast<std::size_t>(n), 0.0);
  for (auto x : a.members()) indicator[static_cast<std::size_t>(x - 1)] = 1.0;
  const std::int64_t dims[1] = {n};
  const auto corr = fft::autocorrelation(indicator, dims, fft_budget);
  const auto exact = fft::round_exact(corr);
  // exact[d + n - 1] = |A ∩ (A + d)|.
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const auto d = shifts[i];
    if (d <= -n || d >= n) continue;
    prof.counts[i] = exact[static_cast<std::size_t>(d + n - 1)];
  }
  return prof;
}

RecurrenceProfile profile_grid(const GridSet& b, std::int64_t range_end) {
  check_range(range_end);
  RecurrenceProfile prof;
  prof.universe_size = b.cell_count();
  prof.set_cardinality = b.cardinality();
  prof.counts.assign(static_cast<std::size_t>(range_end + 1), 0);
  prof.shifts.reserve(prof.counts.size());
  for (std::int64_t n = 0; n <= range_end; ++n) prof.shifts.push_back(curve_point(b.dimension(), n));
  parallel_for(prof.counts.size(), [&](std::size_t n) {
    prof.counts[n] = grid_shift_intersect_count(b, prof.shifts[n]);
  });
  return prof;
}

ReturnTimeSet optimal_returns(const RecurrenceProfile& prof, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) throw ContractViolation("epsilon must lie in (0, 1]");
  // counts/U > (|A|/U)^2 - num/den  <=>  counts*U*den > |A|^2*den - num*U^2.
  const BigInt u = from_int64(prof.universe_size);
  const BigInt card = from_int64(prof.set_cardinality);
  const BigInt& num = epsilon.get_num();
  const BigInt& den = epsilon.get_den();
  const BigInt rhs = card * card * den - num * u * u;
  const BigInt lhs_scale = u * den;
  ReturnTimeSet out;
  out.epsilon = epsilon;
  out.range_end = prof.range_end();
  for (std::size_t n = 0; n < prof.counts.size(); ++n) {
    if (from_int64(prof.counts[n]) * lhs_scale > rhs) out.times.push_back(static_cast<std::int64_t>(n));
  }
  return out;
}

namespace {

std::int64_t max_gap_of(const std::vector<std::int64_t>& times, std::int64_t range_end) {
  if (times.empty()) return range_end + 1;
  std::int64_t gap = std::max(times.front(), range_end - times.back());
  for (std::size_t i = 1; i < times.size(); ++i) gap = std::max(gap, times[i] - times[i - 1]);
  return gap;
}

}  // namespace

GapStats gap_stats(const ReturnTimeSet& r) {
  GapStats s;
  const std::int64_t l = r.range_end;
  s.count = static_cast<std::int64_t>(r.times.size());
  s.density = static_cast<double>(s.count) / static_cast<double>(l + 1);
  s.max_gap = max_gap_of(r.times, l);
  std::vector<std::int64_t> positive;
  for (auto t : r.times) {
    if (t >= 1) positive.push_back(t);
  }
  s.positive_count = static_cast<std::int64_t>(positive.size());
  s.positive_density = l >= 1 ? static_cast<double>(s.positive_count) / static_cast<double>(l) : 0.0;
  s.positive_max_gap = max_gap_of(positive, l);
  return s;
}

std::int64_t integer_root(std::int64_t n, int k) {
  if (n < 0 || k < 1) throw ContractViolation("integer_root needs n >= 0 and k >= 1");
  std::int64_t lo = 0, hi = 1;
  auto fits = [&](std::int64_t x) {
    std::int64_t acc = 1;
    for (int i = 0; i < k; ++i) {
      if (__builtin_mul_overflow(acc, x, &acc)) return false;
    }
    return acc <= n;
  };
  while (fits(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const auto mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace polyrec
