#include "polyrec/weyl.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "polyrec/arcs.hpp"
#include "polyrec/checked.hpp"
#include "polyrec/error.hpp"
#include "polyrec/parallel.hpp"

namespace polyrec {

namespace {

using u128 = unsigned __int128;

// Phase θ(n) = α·γ(n) mod 1. When every coordinate denominator fits in 62
// bits the residues n^j mod b_j are computed in 128-bit integer arithmetic
// and only the k final fractions r_j/b_j touch floating point.
class PhaseEvaluator {
 public:
  explicit PhaseEvaluator(const TorusPoint& alpha) : alpha_(alpha) {
    const BigInt limit = BigInt(1) << 62;
    for (const auto& c : alpha.coords()) {
      if (c.get_den() >= limit) {
        fast_ = false;
        break;
      }
      num_.push_back(static_cast<std::uint64_t>(to_int64(c.get_num())));
      den_.push_back(static_cast<std::uint64_t>(to_int64(c.get_den())));
    }
  }

  double operator()(std::int64_t n) const {
    if (fast_) {
      double theta = 0.0;
      for (std::size_t j = 0; j < den_.size(); ++j) {
        const std::uint64_t b = den_[j];
        if (b == 1) continue;
        const std::int64_t rem = n % static_cast<std::int64_t>(b);
        const std::uint64_t base = static_cast<std::uint64_t>(rem < 0 ? rem + static_cast<std::int64_t>(b) : rem);
        std::uint64_t p = 1;
        for (std::size_t e = 0; e <= j; ++e) p = static_cast<std::uint64_t>(u128(p) * base % b);
        const std::uint64_t r = static_cast<std::uint64_t>(u128(num_[j]) * p % b);
        theta += static_cast<double>(r) / static_cast<double>(b);
      }
      return theta - std::floor(theta);
    }
    Rational acc = 0;
    BigInt pw = 1;
    const BigInt nn = from_int64(n);
    for (int j = 1; j <= alpha_.dim(); ++j) {
      pw *= nn;
      acc += alpha_.coord(j) * Rational(pw);
      acc = frac(acc);
    }
    return to_double(acc);
  }

 private:
  const TorusPoint& alpha_;
  bool fast_ = true;
  std::vector<std::uint64_t> num_;
  std::vector<std::uint64_t> den_;
};

// Sum of e(θ(first + step*t)) for t in [lo, hi) with the same split points as
// pairwise_sum over the materialized terms.
std::complex<double> progression_sum(const PhaseEvaluator& phase, std::int64_t first,
                                     std::int64_t step, std::size_t lo, std::size_t n) {
  if (n <= 16) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += unit_phase(phase(first + step * static_cast<std::int64_t>(lo + i)));
    }
    return acc;
  }
  const std::size_t half = n / 2;
  return progression_sum(phase, first, step, lo, half) +
         progression_sum(phase, first, step, lo + half, n - half);
}

void require_positive(std::int64_t v, const char* what) {
  if (v < 1) throw ContractViolation(std::string(what) + " must be >= 1");
}

}  // namespace

std::complex<double> weyl_S_window(std::int64_t lambda, std::int64_t mu, const TorusPoint& alpha) {
  require_positive(mu, "mu");
  if (lambda < 0) throw ContractViolation("lambda must be >= 0");
  const PhaseEvaluator phase(alpha);
  const std::int64_t first = checked::add(lambda, 1);
  checked::add(lambda, mu);
  return progression_sum(phase, first, 1, 0, static_cast<std::size_t>(mu)) /
         static_cast<double>(mu);
}

std::complex<double> weyl_S(std::int64_t mu, const TorusPoint& alpha) {
  return weyl_S_window(0, mu, alpha);
}

std::complex<double> weyl_S_div(std::int64_t lambda, std::int64_t mu, std::int64_t q,
                                const TorusPoint& alpha) {
  require_positive(mu, "mu");
  require_positive(q, "q");
  if (lambda < 0) throw ContractViolation("lambda must be >= 0");
  const std::int64_t hi = checked::add(lambda, mu);
  const std::int64_t first_t = lambda / q + 1;
  const std::int64_t last_t = hi / q;
  const double scale = static_cast<double>(q) / static_cast<double>(mu);
  if (last_t < first_t) return 0.0;
  const PhaseEvaluator phase(alpha);
  const auto count = static_cast<std::size_t>(last_t - first_t + 1);
  return progression_sum(phase, first_t * q, q, 0, count) * scale;
}

// TLambda ----------------------------------------------------------------------

namespace {

BigInt binomial(int n, int r) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

}  // namespace

TLambda::TLambda(int k, const BigInt& lambda) : k_(k), lambda_(lambda) {
  if (k < 1) throw ContractViolation("T_lambda dimension must be >= 1");
  entries_.assign(static_cast<std::size_t>(k * k), BigInt(0));
  for (int i = 1; i <= k; ++i) {
    for (int j = i; j <= k; ++j) {
      entries_[static_cast<std::size_t>((i - 1) * k + (j - 1))] =
          binomial(j, i) * pow(lambda, static_cast<unsigned long>(j - i));
    }
  }
}

std::vector<std::int64_t> TLambda::int64_entries() const {
  std::vector<std::int64_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(to_int64(e));
  return out;
}

BigInt TLambda::determinant() const {
  BigInt d = 1;
  for (int i = 1; i <= k_; ++i) d *= entry(i, i);
  return d;
}

TorusPoint TLambda::apply(const TorusPoint& alpha) const {
  if (alpha.dim() != k_) throw ContractViolation("T_lambda applied to a point of the wrong dimension");
  std::vector<Rational> out(static_cast<std::size_t>(k_));
  for (int i = 1; i <= k_; ++i) {
    Rational acc = 0;
    for (int j = i; j <= k_; ++j) acc += Rational(entry(i, j)) * alpha.coord(j);
    out[static_cast<std::size_t>(i - 1)] = acc;
  }
  return TorusPoint(std::move(out));
}

TorusPoint TLambda::apply_inverse(const TorusPoint& beta) const {
  if (beta.dim() != k_) throw ContractViolation("T_lambda applied to a point of the wrong dimension");
  std::vector<Rational> x(static_cast<std::size_t>(k_));
  for (int i = k_; i >= 1; --i) {
    Rational acc = beta.coord(i);
    for (int j = i + 1; j <= k_; ++j) acc -= Rational(entry(i, j)) * x[static_cast<std::size_t>(j - 1)];
    x[static_cast<std::size_t>(i - 1)] = frac(acc);
  }
  return TorusPoint(std::move(x));
}

std::vector<BigInt> TLambda::transpose_apply(std::span<const BigInt> y) const {
  if (static_cast<int>(y.size()) != k_) throw ContractViolation("vector has the wrong dimension");
  std::vector<BigInt> out(static_cast<std::size_t>(k_), BigInt(0));
  for (int j = 1; j <= k_; ++j) {
    for (int i = 1; i <= j; ++i) out[static_cast<std::size_t>(j - 1)] += entry(i, j) * y[static_cast<std::size_t>(i - 1)];
  }
  return out;
}

std::vector<BigInt> TLambda::inverse_transpose_apply(std::span<const BigInt> d) const {
  // Solve T^T x = d; T^T is unit lower triangular.
  if (static_cast<int>(d.size()) != k_) throw ContractViolation("vector has the wrong dimension");
  std::vector<BigInt> x(static_cast<std::size_t>(k_));
  for (int j = 1; j <= k_; ++j) {
    BigInt acc = d[static_cast<std::size_t>(j - 1)];
    for (int i = 1; i < j; ++i) acc -= entry(i, j) * x[static_cast<std::size_t>(i - 1)];
    x[static_cast<std::size_t>(j - 1)] = acc;
  }
  return x;
}

TLambda t_lambda(int k, const BigInt& lambda) {
  if (lambda < 1) throw ContractViolation("T_lambda needs lambda >= 1");
  return TLambda(k, lambda);
}

TorusPoint apply_t_lambda(const TLambda& t, const TorusPoint& alpha) { return t.apply(alpha); }

// Relations ----------------------------------------------------------------------

RelationResiduals relation_residuals(std::int64_t lambda, std::int64_t mu, std::int64_t q,
                                     std::span<const TorusPoint> samples) {
  require_positive(mu, "mu");
  require_positive(q, "q");
  if (lambda < 0) throw ContractViolation("lambda must be >= 0");
  if (lambda % q != 0 || mu % q != 0) {
    throw ContractViolation("relation 3 needs q to divide both lambda and mu");
  }
  std::vector<RelationResiduals> per(samples.size());
  parallel_for(samples.size(), [&](std::size_t s) {
    const TorusPoint& alpha = samples[s];
    const int k = alpha.dim();
    const auto window = weyl_S_window(lambda, mu, alpha);

    const auto lm = static_cast<double>(lambda + mu);
    std::complex<double> rhs1 = lm / static_cast<double>(mu) * weyl_S(lambda + mu, alpha);
    if (lambda > 0) rhs1 -= static_cast<double>(lambda) / static_cast<double>(mu) * weyl_S(lambda, alpha);

    std::complex<double> rhs2;
    if (lambda == 0) {
      rhs2 = weyl_S(mu, alpha);
    } else {
      const TLambda t(k, from_int64(lambda));
      Rational base = 0;
      BigInt pw = 1;
      for (int j = 1; j <= k; ++j) {
        pw *= from_int64(lambda);
        base += alpha.coord(j) * Rational(pw);
      }
      rhs2 = unit_phase(base) * weyl_S(mu, t.apply(alpha));
    }

    const auto lhs3 = weyl_S_div(lambda, mu, q, alpha);
    const auto rhs3 = weyl_S_window(lambda / q, mu / q, dilate(from_int64(q), alpha));

    per[s].max_r1 = std::abs(window - rhs1);
    per[s].max_r2 = std::abs(window - rhs2);
    per[s].max_r3 = std::abs(lhs3 - rhs3);
  });
  RelationResiduals out;
  for (const auto& r : per) {
    out.max_r1 = std::max(out.max_r1, r.max_r1);
    out.max_r2 = std::max(out.max_r2, r.max_r2);
    out.max_r3 = std::max(out.max_r3, r.max_r3);
  }
  return out;
}

TorusPoint random_torus_point(int k, std::uint64_t& state, int bits) {
  if (bits < 1 || bits > 62) throw ContractViolation("random point precision must be in [1, 62] bits");
  std::mt19937_64 rng(state);
  state = rng();
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  std::vector<Rational> coords;
  coords.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const std::uint64_t den = (rng() & mask) + 1;
    const std::uint64_t num = rng() % den;
    coords.emplace_back(from_int64(static_cast<std::int64_t>(num)),
                        from_int64(static_cast<std::int64_t>(den)));
    coords.back().canonicalize();
  }
  return TorusPoint(std::move(coords));
}

MinorArcScan minor_arc_scan(const Rational& eta, std::int64_t mu, int k, std::int64_t samples,
                            std::uint64_t seed) {
  if (mu < 2) throw ContractViolation("minor arc scan needs mu >= 2 (|S_1| = 1 everywhere)");
  if (samples < 1) throw ContractViolation("minor arc scan needs at least one sample");
  std::vector<TorusPoint> points;
  points.reserve(static_cast<std::size_t>(samples));
  std::uint64_t state = seed;
  for (std::int64_t s = 0; s < samples; ++s) points.push_back(random_torus_point(k, state));

  std::vector<double> value(points.size(), -1.0);
  const Rational mu_q(from_int64(mu));
  parallel_for(points.size(), [&](std::size_t s) {
    if (in_frak_M(points[s], eta, mu_q, k)) return;
    value[s] = std::abs(weyl_S(mu, points[s]));
  });

  MinorArcScan out;
  std::size_t best = points.size();
  for (std::size_t s = 0; s < points.size(); ++s) {
    if (value[s] < 0.0) {
      ++out.discarded;
      continue;
    }
    ++out.survivors;
    if (best == points.size() || value[s] > out.max_abs) {
      out.max_abs = value[s];
      best = s;
    }
  }
  if (best == points.size()) {
    throw NotFoundError("every sample fell inside the major arcs; increase the sample count");
  }
  out.argmax = points[best];
  return out;
}

}  // namespace polyrec
