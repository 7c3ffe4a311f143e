#pragma once

// Smooth cutoffs on the nonisotropic lattices, the counting functional Λ,
// the decomposition f = f1 + f2 + f3 and the per-instance dichotomy report.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polyrec/arcs.hpp"
#include "polyrec/core.hpp"
#include "polyrec/rational.hpp"
#include "polyrec/torus.hpp"

namespace polyrec {

/// One-dimensional profile pair. On the frequency side w = (b⋆b)/(b⋆b)(0)
/// for the bump b(ξ) = cos^2(πξ) on [-1/2, 1/2], so w(0) = 1, 0 <= w <= 1 and
/// w = 0 off (-1, 1). The space side w̌ is (2/3) (sinc x / (1 - x^2))^2,
/// which is the square of a real function and hence nonnegative.
namespace cutoff {

double w(double xi);
double w_check(double x);
/// Beyond this radius w̌ stays below 1e-12.
constexpr double kTruncationRadius = 64.0;

}  // namespace cutoff

/// φ_{q,L} on the lattice {(q ℓ_1, ..., q^k ℓ_k)}, or its sheared version ψ
/// when `shear` is set (ψ(T_λ^T y) = φ(y), ψ̂(α) = φ̂(T_λ α)).
struct LatticeCutoff {
  BigInt q = 1;
  Rational L = 1;
  int k = 1;
  std::optional<BigInt> shear;
};

/// Space side of φ_{q,L}: (q/L)^{k(k+1)/2} Π_j w̌(x_j / L^j) on the lattice,
/// 0 off it. The shear is ignored.
double phi_qL(const LatticeCutoff& cut, std::span<const std::int64_t> x);

/// φ̂_{q,L}(α) = Π_j Σ_m w(L^j (α_j - m/q^j)). Exactly 0 off M_{q,L}: only
/// translates with |L^j(α_j - m/q^j)| < 1, certified in rationals, are
/// evaluated.
double phi_hat_qL(const LatticeCutoff& cut, const TorusPoint& alpha);

/// ψ̂(α) = φ̂(T_λ α). ContractViolation without a shear.
double psi_hat(const LatticeCutoff& cut, const TorusPoint& alpha);

/// A function on [origin, origin + side - 1]^k, axis 0 fastest.
struct WeightedFunction {
  int dimension = 1;
  std::int64_t side = 1;
  std::int64_t origin = 1;
  std::vector<double> values;

  static WeightedFunction zeros(int dimension, std::int64_t side, std::int64_t origin = 1);
  static WeightedFunction indicator(const GridSet& b);
  /// Values must lie in [0, 1].
  static WeightedFunction from_values(int dimension, std::int64_t side, std::vector<double> values);

  double at(std::span<const std::int64_t> point) const;
  double sum() const;
  /// M^{-k} Σ f over the cube the function was built on.
  double mean(std::int64_t cube_side) const;
  /// Zero extension to [origin - margin, origin + side - 1 + margin]^k.
  WeightedFunction extended(std::int64_t margin) const;
};

/// Λ_{q,μ}(g, h) = (q/μ) Σ_{n ∈ (λ, λ+μ], q | n} Σ_m g(m) h(m - γ(n)).
/// Terms whose shift leaves the domain vanish.
double lambda_count(const WeightedFunction& g, const WeightedFunction& h, std::int64_t q,
                    std::int64_t lambda, std::int64_t mu);

/// The offsets z = T_λ^T y and weights φ_{q,L}(y) of every lattice point y
/// within the truncation radius whose offset can connect two points of
/// [lo, hi]^k.
struct ConvolutionKernel {
  std::vector<std::vector<std::int64_t>> offsets;
  std::vector<double> weights;
};

ConvolutionKernel cutoff_kernel(const LatticeCutoff& cut, std::int64_t reach);

/// (f ⋆ ψ)(m) for m in [origin - margin, origin + side - 1 + margin]^k.
WeightedFunction convolve(const WeightedFunction& f, const LatticeCutoff& cut, std::int64_t margin);

struct Decomposition {
  WeightedFunction f;  // input, zero-extended to the output domain
  WeightedFunction f1;
  WeightedFunction f2;
  WeightedFunction f3;
};

/// f1 = f⋆ψ_{q,L1}, f2 = f - f⋆ψ_{q,L2}, f3 = f⋆ψ_{q,L2} - f⋆ψ_{q,L1}, on the
/// cube widened by `margin`. λ = 0 means no shear. Needs L1 >= L2.
Decomposition decompose(const WeightedFunction& f, const BigInt& q, const Rational& L1,
                        const Rational& L2, std::int64_t lambda, std::int64_t margin = 0);

struct SplittingCheck {
  double whole = 0.0;  // Λ(f, f)
  double main = 0.0;   // Λ(f1, f1)
  double star = 0.0;   // Λ(f2, f1) + Λ(f, f2)
  double star2 = 0.0;  // Λ(f3, f1) + Λ(f, f3)
  double lambda_f3_f1 = 0.0;
  double lambda_f_f3 = 0.0;
  double residual() const { return whole - (main + star + star2); }
};

SplittingCheck splitting_check(const Decomposition& d, std::int64_t q, std::int64_t lambda,
                               std::int64_t mu);

/// Grid quadrature of ∫ |f̂|^2 |ψ̂_{q,L2} - ψ̂_{q,L1}|.
double domination_integral(const WeightedFunction& f, const BigInt& q, const Rational& L1,
                           const Rational& L2, std::int64_t lambda,
                           std::span<const std::int64_t> grid);

/// max_m |f1(m) - f1(m - γ(n))| over m with both points in the domain.
double near_invariance(const WeightedFunction& f1, std::int64_t n);

/// sup over `samples` random α of |(1 - ψ̂_{q,L2}(α)) S_{λ,μ,q}(α)|.
double wholepoint_sup(std::int64_t q, const Rational& L2, std::int64_t lambda, std::int64_t mu,
                      int k, std::int64_t samples, std::uint64_t seed);

/// sup over `samples` random α outside Ω_{η,λ,μ} of
/// |φ̂_{q,η^k μ}(α) - φ̂_{q,L_in}(α)| with q = q_η. Points are drawn both
/// uniformly and next to the lattice so the boundary layers are exercised.
double cutoff_leak_sup(const ArcSystem& sys, const Rational& inner_L, std::int64_t samples,
                       std::uint64_t seed);

/// exp(-C ε^{-1} log ε^{-1}) snapped to a rational with denominator <= 10^12.
Rational eta_epsilon(const Rational& epsilon, double c);

struct EtaSearch {
  int index = -1;  // first j that passed, -1 if none
  std::vector<Rational> etas;
  std::vector<double> sups;
};

/// Walks η_0 = eta0, η_{j+1} = ratio·η_j and returns the first j for which
/// the sampled sup of |ψ̂_{q_{j+1}, η_{j+1}^k μ} - ψ̂_{q_j, η_j^k μ}| is at
/// most ε/40.
EtaSearch lacunary_eta_search(const Rational& epsilon, const Rational& eta0, const Rational& ratio,
                              int steps, int k, std::int64_t lambda, std::int64_t mu,
                              std::int64_t samples, std::uint64_t seed);

struct DichotomyOptions {
  /// Branch 1 threshold is c·ε·μ/q_η.
  double branch1_constant = 1.0;
};

struct DichotomyReport {
  Rational delta;
  BigInt q;
  std::int64_t radius = 0;
  bool outer_degenerate = false;
  struct {
    std::int64_t count = 0;
    double threshold = 0.0;
    bool holds = false;
  } branch1;
  struct {
    double mass = 0.0;
    double threshold = 0.0;
    bool holds = false;
  } branch2;
};

/// Branch 1 counts n in (λ, λ+μ] with |B ∩ (B+γ(n))|/M^k > δ^2 - ε (exact);
/// branch 2 is the Fourier mass of T_λ^{-1} Ω_{η,λ,μ} against εM^k/10.
DichotomyReport dichotomy_report(const GridSet& b, const Rational& epsilon, std::int64_t lambda,
                                 std::int64_t mu, const Rational& eta,
                                 const DichotomyOptions& options = {});

}  // namespace polyrec
