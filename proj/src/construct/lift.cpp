#include <algorithm>
#include <numeric>
#include <tuple>

#include "polyrec/checked.hpp"
#include "polyrec/construct.hpp"
#include "polyrec/error.hpp"
#include "polyrec/profile.hpp"

namespace polyrec {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

bool included(const ReturnTimeSet& inner, const ReturnTimeSet& outer) {
  return std::includes(outer.times.begin(), outer.times.end(), inner.times.begin(), inner.times.end());
}

}  // namespace

std::int64_t linear_form(const Polynomial& p, std::span<const std::int64_t> b) {
  if (static_cast<int>(b.size()) != p.degree()) throw ContractViolation("point has the wrong dimension");
  std::int64_t acc = 0;
  for (int i = 1; i <= p.degree(); ++i) {
    acc = checked::add(acc, checked::mul(p.coeff(i), b[static_cast<std::size_t>(i - 1)]));
  }
  return acc;
}

std::vector<std::int64_t> bezout_vector(const Polynomial& p) {
  const int k = p.degree();
  std::vector<std::int64_t> u(static_cast<std::size_t>(k), 0);
  std::int64_t g = 0;
  for (int i = 1; i <= k; ++i) {
    const std::int64_t c = p.coeff(i);
    if (c == 0) continue;
    // Extended Euclid on (g, c): x g + y c = gcd.
    std::int64_t old_r = g, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      const std::int64_t quo = old_r / r;
      std::tie(old_r, r) = std::pair{r, checked::sub(old_r, checked::mul(quo, r))};
      std::tie(old_s, s) = std::pair{s, checked::sub(old_s, checked::mul(quo, s))};
      std::tie(old_t, t) = std::pair{t, checked::sub(old_t, checked::mul(quo, t))};
    }
    for (int j = 0; j < i - 1; ++j) u[static_cast<std::size_t>(j)] = checked::mul(u[static_cast<std::size_t>(j)], old_s);
    u[static_cast<std::size_t>(i - 1)] = old_t;
    g = old_r;
  }
  if (g < 0) {
    for (auto& v : u) v = -v;
  }
  return u;
}

GridSet lift_tile(const DenseSet& a, const Polynomial& p, std::int64_t side, std::int64_t offset) {
  const int k = p.degree();
  GridSet shape(k, side);
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(shape.cell_count()), 0);
  std::vector<std::int64_t> b(static_cast<std::size_t>(k), 1);
  std::int64_t value = checked::add(linear_form(p, b), offset);
  const std::int64_t n = a.universe_size();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (value >= 1 && value <= n && a.contains(value)) cells[i] = 1;
    for (int j = 0; j < k; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      const std::int64_t c = p.coeff(j + 1);
      if (b[jj] < side) {
        ++b[jj];
        value += c;
        break;
      }
      value -= c * (side - 1);
      b[jj] = 1;
    }
  }
  return GridSet::from_cells(k, side, std::move(cells));
}

std::optional<std::pair<std::int64_t, std::int64_t>> lift_bookkeeping(
    const DenseSet& a, const Polynomial& p, std::int64_t residue, std::int64_t n_prime,
    std::int64_t budget) {
  const int k = p.degree();
  std::int64_t abs_sum = 0;
  for (auto c : p.coeffs()) abs_sum = checked::add(abs_sum, std::abs(c));
  const std::int64_t span_half = checked::mul(abs_sum, n_prime);
  const std::int64_t size = checked::add(checked::mul(2, span_half), 1);
  const std::int64_t width = 2 * n_prime + 1;
  if (size > budget || static_cast<double>(size) * static_cast<double>(width) * k > 50.0 * static_cast<double>(budget)) {
    return std::nullopt;
  }
  // counts[v + span_half] = #{ b in [-N', N']^k : 𝒫(b) = v }.
  std::vector<std::int64_t> counts(static_cast<std::size_t>(size), 0);
  counts[static_cast<std::size_t>(span_half)] = 1;
  for (auto c : p.coeffs()) {
    std::vector<std::int64_t> next(counts.size(), 0);
    for (std::int64_t v = 0; v < size; ++v) {
      const std::int64_t here = counts[static_cast<std::size_t>(v)];
      if (here == 0) continue;
      for (std::int64_t b = -n_prime; b <= n_prime; ++b) {
        const std::int64_t w = v + c * b;
        if (w >= 0 && w < size) next[static_cast<std::size_t>(w)] = checked::add(next[static_cast<std::size_t>(w)], here);
      }
    }
    counts.swap(next);
  }
  const std::int64_t m = p.content();
  const std::int64_t n = a.universe_size();
  auto count_of = [&](std::int64_t v) -> std::int64_t {
    const std::int64_t idx = v + span_half;
    return idx >= 0 && idx < size ? counts[static_cast<std::size_t>(idx)] : 0;
  };
  std::int64_t q = 0, bprime = 0;
  for (std::int64_t v = m; v <= n; v += m) q = checked::add(q, count_of(v));
  for (std::int64_t x = residue; x <= n; x += m) {
    if (x >= 1 && x - residue >= 1 && a.contains(x)) bprime = checked::add(bprime, count_of(x - residue));
  }
  return std::pair{q, bprime};
}

LiftResult lift_finite(const DenseSet& a, const Polynomial& p, const Rational& epsilon,
                       std::int64_t range_end, const LiftOptions& options) {
  if (a.empty()) throw ContractViolation("lift_finite needs a nonempty set");
  if (epsilon <= 0 || epsilon > 1) throw ContractViolation("epsilon must lie in (0, 1]");
  if (range_end < 0) throw ContractViolation("range end must be >= 0");
  const int k = p.degree();
  const std::int64_t n = a.universe_size();
  const std::int64_t m = p.content();

  LiftResult out;
  out.modulus = m;
  out.universe = n;
  out.eta = options.eta ? *options.eta : epsilon / Rational(20 * k);
  if (out.eta <= 0) throw ContractViolation("tiling fraction eta must be positive");
  out.side = std::max<std::int64_t>(1, to_int64(floor_of(out.eta * Rational(from_int64(n)) / Rational(from_int64(m)))));
  std::int64_t abs_sum = 0;
  for (auto c : p.coeffs()) abs_sum = checked::add(abs_sum, std::abs(c));
  out.n_prime = checked::mul(options.n_prime_factor ? *options.n_prime_factor : 1 + abs_sum, n);

  const ReturnTimeSet a_returns = optimal_returns(profile_direct(a, p, range_end), epsilon);
  const Rational half_eps = epsilon / 2;

  std::int64_t min_form = 0, max_form = 0;
  for (auto c : p.coeffs()) {
    const std::int64_t lo = std::min(c, checked::mul(c, out.side));
    const std::int64_t hi = std::max(c, checked::mul(c, out.side));
    min_form = checked::add(min_form, lo);
    max_form = checked::add(max_form, hi);
  }
  const std::int64_t step = checked::mul(out.side, m);
  const auto u = bezout_vector(p);
  const ResidueSplit split = residue_split(a, p);

  for (std::int64_t j = 0; j < m; ++j) {
    if (split.classes[static_cast<std::size_t>(j)].empty()) continue;
    const std::int64_t t_lo = ceil_div(1 - max_form - j, step);
    const std::int64_t t_hi = floor_div(n - min_form - j, step);
    for (std::int64_t t = t_lo; t <= t_hi; ++t) {
      const std::int64_t offset = checked::add(checked::mul(t, step), j);
      GridSet b = lift_tile(a, p, out.side, offset);
      ++out.candidates_tried;
      if (b.cardinality() == 0) continue;
      const ReturnTimeSet b_returns = optimal_returns(profile_grid(b, range_end), half_eps);
      if (!included(b_returns, a_returns)) continue;
      out.residue = j;
      out.tile_index = t;
      out.offset = offset;
      out.tile_origin.clear();
      for (auto v : u) out.tile_origin.push_back(checked::mul(checked::mul(v, t), out.side));
      out.class_size = split.classes[static_cast<std::size_t>(j)].cardinality();
      if (auto book = lift_bookkeeping(a, p, j, out.n_prime, options.bookkeeping_budget)) {
        out.q_size = book->first;
        out.b_prime_size = book->second;
      }
      out.lifted = std::move(b);
      out.verified_through = range_end;
      return out;
    }
  }
  throw NotFoundError("lift_finite: no (class, tile) pair verifies the inclusion for n <= " +
                      std::to_string(range_end) + " at this scale");
}

bool verify_lift_inclusion(const DenseSet& a, const Polynomial& p, const Rational& epsilon,
                           std::int64_t range_end, const LiftResult& lift) {
  if (lift.lifted.dimension() != p.degree()) throw ContractViolation("lift dimension differs from the degree of P");
  const ReturnTimeSet a_returns = optimal_returns(profile_direct(a, p, range_end), epsilon);
  const ReturnTimeSet b_returns = optimal_returns(profile_grid(lift.lifted, range_end), epsilon / 2);
  return included(b_returns, a_returns);
}

}  // namespace polyrec
