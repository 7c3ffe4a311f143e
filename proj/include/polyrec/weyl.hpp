#pragma once

// Normalized Weyl sums along the moment curve, the shear T_λ that relates a
// windowed sum to a based one, and empirical checks of the sum relations.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "polyrec/rational.hpp"
#include "polyrec/torus.hpp"

namespace polyrec {

/// S_μ(α) = (1/μ) Σ_{n=1}^{μ} e(α·γ(n)).
std::complex<double> weyl_S(std::int64_t mu, const TorusPoint& alpha);

/// S_{λ,μ}(α) = (1/μ) Σ_{n=λ+1}^{λ+μ} e(α·γ(n)).
std::complex<double> weyl_S_window(std::int64_t lambda, std::int64_t mu, const TorusPoint& alpha);

/// S_{λ,μ,q}(α) = (q/μ) Σ_{n ∈ (λ, λ+μ], q | n} e(α·γ(n)).
std::complex<double> weyl_S_div(std::int64_t lambda, std::int64_t mu, std::int64_t q,
                                const TorusPoint& alpha);

/// Upper unitriangular integer matrix with (T_λ)_{ij} = C(j,i) λ^{j-i} for
/// j >= i (1-based). Entries are exact big integers.
class TLambda {
 public:
  TLambda(int k, const BigInt& lambda);

  int dim() const { return k_; }
  const BigInt& lambda() const { return lambda_; }
  /// Entry (i, j), 1 <= i, j <= k.
  const BigInt& entry(int i, int j) const {
    return entries_[static_cast<std::size_t>((i - 1) * k_ + (j - 1))];
  }
  /// Entries as int64, row major; OverflowError if any does not fit.
  std::vector<std::int64_t> int64_entries() const;
  BigInt determinant() const;

  /// T_λ α reduced modulo 1, exact.
  TorusPoint apply(const TorusPoint& alpha) const;
  /// T_λ^{-1} β reduced modulo 1, by exact back substitution.
  TorusPoint apply_inverse(const TorusPoint& beta) const;
  /// (T_λ^{-1})^T d for an integer frequency vector d.
  std::vector<BigInt> inverse_transpose_apply(std::span<const BigInt> d) const;
  /// T_λ^T y for an integer vector y.
  std::vector<BigInt> transpose_apply(std::span<const BigInt> y) const;

 private:
  int k_;
  BigInt lambda_;
  std::vector<BigInt> entries_;
};

TLambda t_lambda(int k, const BigInt& lambda);
TorusPoint apply_t_lambda(const TLambda& t, const TorusPoint& alpha);

struct RelationResiduals {
  double max_r1 = 0.0;  // S_{λ,μ} vs ((λ+μ)/μ) S_{λ+μ} - (λ/μ) S_λ
  double max_r2 = 0.0;  // S_{λ,μ}(α) vs e(α·γ(λ)) S_μ(T_λ α)
  double max_r3 = 0.0;  // S_{λ,μ,q}(α) vs S_{λ/q,μ/q}(q∘α)
};

/// Evaluates both sides of the three exact sum relations at each sample and
/// returns the largest discrepancies. Needs q | λ and q | μ.
RelationResiduals relation_residuals(std::int64_t lambda, std::int64_t mu, std::int64_t q,
                                     std::span<const TorusPoint> samples);

/// Uniform random torus point with coordinates a/2^bits.
TorusPoint random_torus_point(int k, std::uint64_t& state, int bits = 40);

struct MinorArcScan {
  double max_abs = 0.0;
  TorusPoint argmax = TorusPoint::zero(1);
  std::int64_t survivors = 0;
  std::int64_t discarded = 0;
};

/// Draws `samples` uniform points, drops those inside the major arcs
/// 𝔐_{η,μ}, and reports the largest |S_μ| among the rest. Ties in the
/// maximum resolve to the earliest sample. Needs μ >= 2; NotFoundError when
/// every sample was discarded.
MinorArcScan minor_arc_scan(const Rational& eta, std::int64_t mu, int k, std::int64_t samples,
                            std::uint64_t seed);

}  // namespace polyrec
