#pragma once

// Constructive reductions: lifting a set A ⊆ [1,N] with shift polynomial P to
// a grid set B ⊆ [1,M]^k with the moment-curve shifts, and the periodic set
// that avoids P-shifts along arbitrarily late windows.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyrec/core.hpp"
#include "polyrec/rational.hpp"

namespace polyrec {

struct LiftOptions {
  /// Tiling fraction η in M = ηN/m; defaults to ε/(20k).
  std::optional<Rational> eta;
  /// N' = factor·N; defaults to 1 + Σ|c_i|.
  std::optional<std::int64_t> n_prime_factor;
  /// Largest table used for the |Q|, |B'| bookkeeping.
  std::int64_t bookkeeping_budget = 10'000'000;
};

struct LiftResult {
  std::int64_t residue = 0;  // the class j
  std::int64_t modulus = 1;  // m = gcd of the coefficients
  std::int64_t universe = 0; // N
  Rational eta;
  std::int64_t side = 1;     // M_lift
  std::int64_t n_prime = 0;  // Q ⊆ [-N', N']^k
  /// Tile x = side·t·u with Σ c_i u_i = m, so 𝒫(x) = t·side·m.
  std::int64_t tile_index = 0;
  std::vector<std::int64_t> tile_origin;
  /// B = { b in [1, M_lift]^k : 𝒫(b) + offset in A_j }, offset = 𝒫(x) + j.
  std::int64_t offset = 0;
  std::int64_t class_size = 0;
  /// |Q| and |B'| when the bookkeeping table fits the budget.
  std::optional<std::int64_t> q_size;
  std::optional<std::int64_t> b_prime_size;
  std::int64_t candidates_tried = 0;
  GridSet lifted = GridSet(1, 1);
  std::int64_t verified_through = 0;
};

/// 𝒫(b) = Σ c_i b_i.
std::int64_t linear_form(const Polynomial& p, std::span<const std::int64_t> b);

/// u with Σ c_i u_i = gcd of the coefficients.
std::vector<std::int64_t> bezout_vector(const Polynomial& p);

/// Builds the tile set for class j and tile index t.
GridSet lift_tile(const DenseSet& a, const Polynomial& p, std::int64_t side, std::int64_t offset);

/// Searches classes j and tile indices t in ascending order for a tile whose
/// return-time set (at ε/2) is contained in A's (at ε) for every n <= L.
/// ContractViolation for empty A; NotFoundError when no candidate verifies.
LiftResult lift_finite(const DenseSet& a, const Polynomial& p, const Rational& epsilon,
                       std::int64_t range_end, const LiftOptions& options = {});

/// For every n in [0, L]: if |B∩(B+γ(n))|/M^k > (|B|/M^k)^2 - ε/2 then
/// |A∩(A+P(n))|/N > (|A|/N)^2 - ε, decided exactly.
bool verify_lift_inclusion(const DenseSet& a, const Polynomial& p, const Rational& epsilon,
                           std::int64_t range_end, const LiftResult& lift);

/// |Q| and |B'| for Q = 𝒫^{-1}(mℤ ∩ [1,N]) ∩ [-N',N']^k and
/// B' = { b in Q : 𝒫(b) in A_j - j }. Nullopt when the table exceeds budget.
std::optional<std::pair<std::int64_t, std::int64_t>> lift_bookkeeping(
    const DenseSet& a, const Polynomial& p, std::int64_t residue, std::int64_t n_prime,
    std::int64_t budget);

struct PeriodicSetDescriptor {
  std::int64_t a = 1;
  std::int64_t L = 1;
  std::int64_t M = 1;
  std::int64_t period = 3;
  std::int64_t block_lo = 2;
  std::int64_t block_hi = 2;

  /// λ_j = period·j + aL.
  std::int64_t lambda(std::int64_t j) const;
  std::string lambda_formula() const;
  bool contains(std::int64_t x) const;
};

/// Least a >= 1 with P increasing on [aL, ∞), P(aL) >= 1 and
/// 2P(aL) >= P((a+1)L). Needs a positive leading coefficient.
PeriodicSetDescriptor counterexample_build(const Polynomial& p, std::int64_t L,
                                           std::int64_t search_bound = 1'000'000);

/// The periodic set restricted to [1, window].
DenseSet materialize(const PeriodicSetDescriptor& desc, std::int64_t window);

/// Checks A ∩ (A + P(n)) = ∅ for n in [λ_j, λ_j + L], j = 0..j_max, on the
/// window [1, period·(j_max+2)] closed up cyclically.
bool counterexample_verify(const PeriodicSetDescriptor& desc, const Polynomial& p, std::int64_t L,
                           std::int64_t j_max);

}  // namespace polyrec
