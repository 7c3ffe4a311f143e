#include "polyrec/arcs.hpp"

#include <string>

#include "polyrec/error.hpp"

namespace polyrec {

namespace {

void require_eta(const Rational& eta) {
  if (eta <= 0 || eta >= 1) throw ContractViolation("eta must lie in (0, 1)");
}

Rational eta_pow(const Rational& eta, int e) { return pow(eta, e); }

BigInt random_below(const BigInt& bound, std::mt19937_64& rng) {
  // Enough random bits to make the modulo bias negligible.
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2) + 64;
  BigInt x = 0;
  for (std::size_t have = 0; have < bits; have += 64) {
    x <<= 64;
    x += BigInt(std::to_string(rng()));
  }
  return x % bound;
}

Rational unit_fraction53(std::mt19937_64& rng) {
  // Uniform in (0, 1] with 53-bit granularity.
  const std::uint64_t x = (rng() >> 11) + 1;
  Rational r(BigInt(std::to_string(x)), BigInt(1) << 53);
  r.canonicalize();
  return r;
}

}  // namespace

std::int64_t eta_radius(const Rational& eta, int k) {
  require_eta(eta);
  if (k < 1) throw ContractViolation("dimension k must be >= 1");
  const BigInt r = floor_of(pow(Rational(1) / eta, k));
  if (r > BigInt(1) << 40) throw ResourceError("eta^-k is too large to enumerate");
  return to_int64(r);
}

BigInt lcm_upto(std::int64_t r) {
  BigInt out = 1;
  for (std::int64_t i = 2; i <= r; ++i) {
    mpz_lcm_ui(out.get_mpz_t(), out.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return out;
}

BigInt q_eta(const Rational& eta, int k) {
  const std::int64_t r = eta_radius(eta, k);
  if (r > 10'000) {
    throw ResourceError("q_eta: floor(eta^-k) = " + std::to_string(r) + " exceeds 10^4");
  }
  return lcm_upto(r);
}

Rational box_distance(const TorusPoint& alpha, const BigInt& q, int j) {
  if (j < 1 || j > alpha.dim()) throw ContractViolation("axis index out of range");
  const BigInt qj = pow(q, static_cast<unsigned long>(j));
  return circle_norm(alpha.coord(j) * Rational(qj)) / Rational(qj);
}

Rational BoxFamily::half_width(int j) const { return Rational(1) / pow(L, j); }

bool BoxFamily::degenerate() const {
  for (int j = 1; j <= k; ++j) {
    if (half_width(j) > Rational(1, 2)) return true;
  }
  return false;
}

bool in_major_box(const TorusPoint& alpha, const BoxFamily& family) {
  if (alpha.dim() != family.k) throw ContractViolation("point and box family dimensions differ");
  for (int j = 1; j <= family.k; ++j) {
    if (box_distance(alpha, family.q, j) > family.half_width(j)) return false;
  }
  return true;
}

bool in_frak_M(const TorusPoint& alpha, const Rational& eta, const Rational& mu, int k) {
  if (alpha.dim() != k) throw ContractViolation("point dimension differs from k");
  if (mu <= 0) throw ContractViolation("mu must be positive");
  const std::int64_t r = eta_radius(eta, k);
  std::vector<Rational> radius;
  const Rational ek = eta_pow(eta, k);
  for (int j = 1; j <= k; ++j) radius.push_back(Rational(1) / (ek * pow(mu, j)));
  for (std::int64_t q = 1; q <= r; ++q) {
    const Rational qq(from_int64(q));
    bool inside = true;
    for (int j = 1; j <= k && inside; ++j) {
      inside = circle_norm(alpha.coord(j) * qq) <= qq * radius[static_cast<std::size_t>(j - 1)];
    }
    if (inside) return true;
  }
  return false;
}

ArcSystem ArcSystem::make(const Rational& eta, int k, const BigInt& lambda, const BigInt& mu) {
  require_eta(eta);
  if (mu < 1) throw ContractViolation("mu must be >= 1");
  if (mu > lambda) throw ContractViolation("arc system needs mu <= lambda");
  ArcSystem s;
  s.eta = eta;
  s.k = k;
  s.radius = eta_radius(eta, k);
  s.q = q_eta(eta, k);
  s.lambda = lambda;
  s.mu = mu;
  return s;
}

BoxFamily ArcSystem::outer() const { return {q, eta_pow(eta, k) * Rational(mu), k}; }

BoxFamily ArcSystem::inner() const { return {q, Rational(lambda) / eta_pow(eta, k), k}; }

bool in_omega(const TorusPoint& alpha, const ArcSystem& sys) {
  const BoxFamily out = sys.outer();
  const BoxFamily in = sys.inner();
  if (out.degenerate()) throw ContractViolation("outer box family M_{q, eta^k mu} is degenerate (half-width > 1/2)");
  if (in.degenerate()) throw ContractViolation("inner box family M_{q, eta^-k lambda} is degenerate (half-width > 1/2)");
  if (in.L < out.L) throw ContractViolation("annulus needs eta^-k lambda >= eta^k mu");
  return in_major_box(alpha, out) && !in_major_box(alpha, in);
}

bool in_pulled_back_omega(const TorusPoint& alpha, const ArcSystem& sys) {
  return in_omega(sys.shear().apply(alpha), sys);
}

void validate_window_chain(const Rational& eta, int k, std::span<const Window> windows) {
  if (windows.empty()) throw ContractViolation("window chain is empty");
  const BigInt q = q_eta(eta, k);
  const Rational ek = eta_pow(eta, k);
  if (Rational(windows[0].mu) < Rational(q) / ek) {
    throw ContractViolation("window 1: mu_1 < eta^-k q_eta");
  }
  for (std::size_t j = 0; j < windows.size(); ++j) {
    const std::string idx = "window " + std::to_string(j + 1);
    if (windows[j].mu < 1) throw ContractViolation(idx + ": mu must be >= 1");
    if (windows[j].mu > windows[j].lambda) throw ContractViolation(idx + ": mu_j > lambda_j");
    if (j + 1 < windows.size() &&
        Rational(windows[j].lambda) > Rational(1, 3) * ek * ek * Rational(windows[j + 1].mu)) {
      throw ContractViolation(idx + ": lambda_j > (1/3) eta^{2k} mu_{j+1}");
    }
  }
}

int overlap_count(const TorusPoint& alpha, std::span<const ArcSystem> systems) {
  int count = 0;
  for (const auto& s : systems) count += in_pulled_back_omega(alpha, s) ? 1 : 0;
  return count;
}

int overlap_count(const TorusPoint& alpha, const Rational& eta, std::span<const Window> windows) {
  validate_window_chain(eta, alpha.dim(), windows);
  std::vector<ArcSystem> systems;
  for (const auto& w : windows) systems.push_back(ArcSystem::make(eta, alpha.dim(), w.lambda, w.mu));
  return overlap_count(alpha, systems);
}

std::optional<TrappedWitness> trapped_index(const TorusPoint& alpha, const ArcSystem& sys) {
  if (sys.eta * 4 * sys.k * sys.k >= 1) throw ContractViolation("trapped_index needs eta < 1/(4k^2)");
  if (!in_pulled_back_omega(alpha, sys)) return std::nullopt;
  const Rational ek = eta_pow(sys.eta, sys.k);
  const Rational small = ek / Rational(sys.lambda);
  const Rational big = Rational(1) / (ek * Rational(sys.mu));
  for (int i = 1; i <= sys.k; ++i) {
    TrappedWitness w;
    w.axis = i;
    w.distance = box_distance(alpha, sys.q, i);
    w.lower = Rational(1, 2) * pow(small, i);
    w.upper = Rational(3, 2) * pow(big, i);
    if (w.lower <= w.distance && w.distance <= w.upper) return w;
  }
  return std::nullopt;
}

TorusPoint sample_pulled_back_omega(const ArcSystem& sys, std::mt19937_64& rng) {
  const BoxFamily out = sys.outer();
  const BoxFamily in = sys.inner();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int axis = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(sys.k));
    std::vector<Rational> beta;
    for (int j = 1; j <= sys.k; ++j) {
      const BigInt qj = pow(sys.q, static_cast<unsigned long>(j));
      Rational centre(random_below(qj, rng), qj);
      centre.canonicalize();
      const Rational r_out = out.half_width(j);
      const Rational r_in = in.half_width(j);
      Rational offset = j == axis ? Rational(r_in + (r_out - r_in) * unit_fraction53(rng))
                                  : Rational(r_out * unit_fraction53(rng));
      if (rng() & 1) offset = -offset;
      beta.push_back(centre + offset);
    }
    const TorusPoint b(std::move(beta));
    if (in_omega(b, sys)) return sys.shear().apply_inverse(b);
  }
  throw NotFoundError("could not place a sample inside the annulus");
}

}  // namespace polyrec
