#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "polyrec/error.hpp"
#include "polyrec/smooth.hpp"

namespace polyrec {

namespace cutoff {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

double w(double xi) {
  const double a = std::abs(xi);
  if (a >= 1.0) return 0.0;
  const double v = (1.0 - a) * (1.0 + std::cos(2.0 * kPi * a) / 2.0) +
                   3.0 * std::sin(2.0 * kPi * a) / (4.0 * kPi);
  return std::max(0.0, 2.0 * v / 3.0);
}

double w_check(double x) {
  const double a = std::abs(x);
  double bump;
  if (std::abs(a - 1.0) < 1e-3) {
    // b̌ as a sum of shifted sincs has no removable singularity at |x| = 1.
    bump = 0.5 * (sinc(a) + 0.5 * (sinc(a - 1.0) + sinc(a + 1.0)));
  } else {
    bump = sinc(a) / (2.0 * (1.0 - a * a));
  }
  return 8.0 / 3.0 * bump * bump;
}

}  // namespace cutoff

double phi_qL(const LatticeCutoff& cut, std::span<const std::int64_t> x) {
  if (static_cast<int>(x.size()) != cut.k) throw ContractViolation("point has the wrong dimension");
  if (cut.L <= 0) throw ContractViolation("cutoff scale L must be positive");
  double value = 1.0;
  BigInt p = 1;
  for (int j = 1; j <= cut.k; ++j) {
    p *= cut.q;
    const BigInt xj = from_int64(x[static_cast<std::size_t>(j - 1)]);
    if (xj % p != 0) return 0.0;
    const Rational lj = pow(cut.L, j);
    value *= to_double(Rational(p) / lj) * cutoff::w_check(to_double(Rational(xj) / lj));
  }
  return value;
}

double phi_hat_qL(const LatticeCutoff& cut, const TorusPoint& alpha) {
  if (alpha.dim() != cut.k) throw ContractViolation("point has the wrong dimension");
  if (cut.L <= 0) throw ContractViolation("cutoff scale L must be positive");
  double value = 1.0;
  BigInt p = 1;
  for (int j = 1; j <= cut.k; ++j) {
    p *= cut.q;
    const Rational lj = pow(cut.L, j);
    const Rational radius = Rational(1) / lj;
    const Rational& a = alpha.coord(j);
    const BigInt lo = floor_of((a - radius) * Rational(p));
    const BigInt hi = ceil_of((a + radius) * Rational(p));
    if (hi - lo > 1'000'000) throw ResourceError("phi_hat: too many lattice translates (L much smaller than q)");
    double axis = 0.0;
    for (BigInt m = lo; m <= hi; ++m) {
      const Rational arg = lj * (a - ratio(m, p));
      if (abs(arg) < 1) axis += cutoff::w(to_double(arg));
    }
    if (axis == 0.0) return 0.0;
    value *= axis;
  }
  return value;
}

double psi_hat(const LatticeCutoff& cut, const TorusPoint& alpha) {
  if (!cut.shear) throw ContractViolation("psi_hat needs a shear lambda");
  if (*cut.shear < 1) return phi_hat_qL(cut, alpha);
  return phi_hat_qL(cut, TLambda(cut.k, *cut.shear).apply(alpha));
}

ConvolutionKernel cutoff_kernel(const LatticeCutoff& cut, std::int64_t reach) {
  if (cut.L <= 0) throw ContractViolation("cutoff scale L must be positive");
  const int k = cut.k;
  const BigInt lambda = cut.shear ? *cut.shear : BigInt(0);
  const TLambda t(k, lambda);

  std::vector<BigInt> period;
  std::vector<Rational> scale;
  BigInt p = 1;
  for (int j = 1; j <= k; ++j) {
    p *= cut.q;
    period.push_back(p);
    scale.push_back(pow(cut.L, j));
  }

  ConvolutionKernel out;
  std::vector<BigInt> y(static_cast<std::size_t>(k), BigInt(0));
  const Rational r(cutoff::kTruncationRadius);
  const BigInt reach_z = from_int64(reach);

  // Axis i offset: z_i = y_i + Σ_{j<i} (T)_{j i} y_j.
  std::function<void(int)> walk = [&](int i) {
    if (i > k) {
      std::vector<std::int64_t> z(static_cast<std::size_t>(k));
      for (int a = 1; a <= k; ++a) {
        BigInt acc = 0;
        for (int j = 1; j <= a; ++j) acc += t.entry(j, a) * y[static_cast<std::size_t>(j - 1)];
        z[static_cast<std::size_t>(a - 1)] = to_int64(acc);
      }
      double weight = 1.0;
      for (int j = 0; j < k; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        weight *= to_double(Rational(period[jj]) / scale[jj]) *
                  cutoff::w_check(to_double(Rational(y[jj]) / scale[jj]));
      }
      if (weight != 0.0) {
        out.offsets.push_back(std::move(z));
        out.weights.push_back(weight);
      }
      return;
    }
    const auto ii = static_cast<std::size_t>(i - 1);
    BigInt shift = 0;
    for (int j = 1; j < i; ++j) shift += t.entry(j, i) * y[static_cast<std::size_t>(j - 1)];
    const Rational tail = r * scale[ii];
    const Rational lo_y = std::max(Rational(-reach_z - shift), Rational(-tail));
    const Rational hi_y = std::min(Rational(reach_z - shift), tail);
    const BigInt lo = ceil_of(lo_y / Rational(period[ii]));
    const BigInt hi = floor_of(hi_y / Rational(period[ii]));
    if (hi - lo > 10'000'000) throw ResourceError("cutoff kernel: lattice enumeration too large");
    for (BigInt l = lo; l <= hi; ++l) {
      y[ii] = l * period[ii];
      walk(i + 1);
    }
    y[ii] = 0;
  };
  walk(1);
  return out;
}

Rational eta_epsilon(const Rational& epsilon, double c) {
  if (epsilon <= 0 || epsilon >= 1) throw ContractViolation("eta_epsilon needs 0 < epsilon < 1");
  if (c <= 0) throw ContractViolation("eta_epsilon needs C > 0");
  const double e = to_double(epsilon);
  const double value = std::exp(-c / e * std::log(1.0 / e));
  const Rational snapped = snap_rational(value, 1'000'000'000'000'000'000);
  if (snapped <= 0) throw ContractViolation("eta_epsilon underflows at this epsilon and C");
  return snapped;
}

double cutoff_leak_sup(const ArcSystem& sys, const Rational& inner_L, std::int64_t samples,
                       std::uint64_t seed) {
  const BoxFamily outer = sys.outer();
  const BoxFamily inner = sys.inner();
  const LatticeCutoff cut_out{sys.q, outer.L, sys.k, std::nullopt};
  const LatticeCutoff cut_in{sys.q, inner_L, sys.k, std::nullopt};
  std::mt19937_64 rng(seed);
  std::uint64_t state = seed;
  double sup = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    TorusPoint alpha = TorusPoint::zero(sys.k);
    if (s % 2 == 0) {
      alpha = random_torus_point(sys.k, state);
    } else {
      std::vector<Rational> coords;
      BigInt p = 1;
      for (int j = 1; j <= sys.k; ++j) {
        p *= sys.q;
        const BigInt a = BigInt(std::to_string(rng())) % p;
        const Rational spread = 2 * outer.half_width(j);
        Rational u(BigInt(std::to_string(rng() >> 11)), BigInt(1) << 53);
        u.canonicalize();
        Rational centre(a, p);
        centre.canonicalize();
        coords.push_back(centre + spread * (2 * u - 1));
      }
      alpha = TorusPoint(std::move(coords));
    }
    if (in_major_box(alpha, outer) && !in_major_box(alpha, inner)) continue;
    sup = std::max(sup, std::abs(phi_hat_qL(cut_out, alpha) - phi_hat_qL(cut_in, alpha)));
  }
  return sup;
}

}  // namespace polyrec
