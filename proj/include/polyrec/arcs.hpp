#pragma once

// Rational arc geometry on the torus: the universal denominator q_η, the
// nonisotropic major boxes M_{q,L}, the major arcs 𝔐_{η,μ}, the annuli
// Ω_{η,λ,μ} and their pull-backs under T_λ. Every membership test is exact.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "polyrec/rational.hpp"
#include "polyrec/torus.hpp"
#include "polyrec/weyl.hpp"

namespace polyrec {

/// ⌊η^{-k}⌋ computed exactly. Needs 0 < η < 1.
std::int64_t eta_radius(const Rational& eta, int k);

/// lcm(1, ..., ⌊η^{-k}⌋). ResourceError once the radius exceeds 10^4.
BigInt q_eta(const Rational& eta, int k);

/// lcm(1, ..., r) for r >= 1.
BigInt lcm_upto(std::int64_t r);

/// Distance on the circle from α_j to the nearest point of (1/q^j)ℤ.
Rational box_distance(const TorusPoint& alpha, const BigInt& q, int j);

/// M_{q,L} = { α : box_distance(α, q, j) <= 1/L^j for all j } (closed).
struct BoxFamily {
  BigInt q = 1;
  Rational L = 1;
  int k = 1;

  Rational half_width(int j) const;
  /// True when some half-width exceeds 1/2, in which case every point of the
  /// torus belongs to the family.
  bool degenerate() const;
};

bool in_major_box(const TorusPoint& alpha, const BoxFamily& family);

/// 𝔐_{η,μ}: some q in [1, ⌊η^{-k}⌋] and a in ℤ^k with
/// |α_j - a_j/q| <= 1/(η^k μ^j) on every axis.
bool in_frak_M(const TorusPoint& alpha, const Rational& eta, const Rational& mu, int k);

struct ArcSystem {
  Rational eta;
  int k = 1;
  std::int64_t radius = 1;  // ⌊η^{-k}⌋
  BigInt q = 1;             // q_η
  BigInt lambda = 1;
  BigInt mu = 1;

  /// Validates 0 < η < 1 and 1 <= μ <= λ and computes q_η.
  static ArcSystem make(const Rational& eta, int k, const BigInt& lambda, const BigInt& mu);

  /// M_{q_η, η^k μ}.
  BoxFamily outer() const;
  /// M_{q_η, η^{-k} λ}.
  BoxFamily inner() const;
  TLambda shear() const { return TLambda(k, lambda); }
};

/// α ∈ outer ∖ inner. ContractViolation when either family is degenerate.
bool in_omega(const TorusPoint& alpha, const ArcSystem& sys);

/// T_λ α ∈ Ω.
bool in_pulled_back_omega(const TorusPoint& alpha, const ArcSystem& sys);

struct Window {
  BigInt lambda;
  BigInt mu;
};

/// Checks μ_1 >= η^{-k} q_η and μ_j <= λ_j <= (1/3) η^{2k} μ_{j+1}; raises
/// ContractViolation naming the first failing index (1-based).
void validate_window_chain(const Rational& eta, int k, std::span<const Window> windows);

/// Number of j with α ∈ T_{λ_j}^{-1} Ω_j, after validating the chain.
int overlap_count(const TorusPoint& alpha, const Rational& eta, std::span<const Window> windows);

/// Same count against a prebuilt list of systems (no validation).
int overlap_count(const TorusPoint& alpha, std::span<const ArcSystem> systems);

struct TrappedWitness {
  int axis = 0;
  Rational distance;
  Rational lower;  // (1/2)(η^k/λ)^i
  Rational upper;  // (3/2)(1/(η^k μ))^i
};

/// For α in the pulled-back annulus, the first axis i whose lattice distance
/// lies within the two-sided bounds. Absent when α is outside the pulled-back
/// annulus or no axis qualifies. Needs η < 1/(4k^2).
std::optional<TrappedWitness> trapped_index(const TorusPoint& alpha, const ArcSystem& sys);

/// A point of T_λ^{-1} Ω drawn from `rng`: T_λ α is placed next to a random
/// lattice point with every axis inside the outer radius and one randomly
/// chosen axis outside the inner radius. Needs a nondegenerate annulus.
TorusPoint sample_pulled_back_omega(const ArcSystem& sys, std::mt19937_64& rng);

}  // namespace polyrec
