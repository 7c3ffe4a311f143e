#pragma once

// Exact Fourier bookkeeping for grid sets: the difference table r_B, the
// counting identity evaluated by Nyquist-exact quadrature, Plancherel, and
// the Fourier mass of finite unions of (periodic) boxes on the torus.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polyrec/arcs.hpp"
#include "polyrec/core.hpp"
#include "polyrec/rational.hpp"
#include "polyrec/torus.hpp"
#include "polyrec/weyl.hpp"

namespace polyrec {

/// r_B(d) = |B ∩ (B + d)| for every d in [-(M-1), M-1]^k.
class Autocorrelation {
 public:
  struct Entry {
    std::vector<std::int64_t> lag;
    std::int64_t count = 0;
  };

  int dimension() const { return dimension_; }
  std::int64_t side() const { return side_; }
  std::int64_t cardinality() const { return cardinality_; }
  bool is_dense() const { return !dense_.empty(); }

  std::int64_t at(std::span<const std::int64_t> lag) const;
  /// Nonzero entries in a fixed order (axis 0 fastest, lags ascending).
  const std::vector<Entry>& nonzero() const { return nonzero_; }

  static Autocorrelation from_dense(int dimension, std::int64_t side, std::int64_t cardinality,
                                    std::vector<std::int64_t> table);
  static Autocorrelation from_entries(int dimension, std::int64_t side, std::int64_t cardinality,
                                      std::vector<Entry> entries);

 private:
  int dimension_ = 1;
  std::int64_t side_ = 1;
  std::int64_t cardinality_ = 0;
  std::vector<std::int64_t> dense_;
  std::vector<Entry> nonzero_;
};

/// Dense FFT table while (2M-1)^k <= dense_limit, pair enumeration beyond.
Autocorrelation autocorrelation(const GridSet& b, std::int64_t dense_limit = std::int64_t{1} << 24);

/// |Σ_m v(m) e(-m·α)|^2 on the grid α = g/G (g_j in [0, G_j)), axis 0
/// fastest. `values` holds a function on [origin, origin + side - 1]^k.
std::vector<double> power_spectrum(std::span<const double> values, int dimension,
                                   std::int64_t side, std::int64_t origin,
                                   std::span<const std::int64_t> grid,
                                   std::int64_t budget = std::int64_t{1} << 26);

/// Grid sizes G_j = good_size(2(M - 1 + (λ+μ)^j) + 1).
std::vector<std::int64_t> nyquist_grid(int dimension, std::int64_t side, std::int64_t lambda,
                                       std::int64_t mu);

struct CountIdentity {
  Rational direct;
  double quadrature = 0.0;
  std::vector<std::int64_t> grid;
};

/// direct = (1/μ) Σ_{n=λ+1}^{λ+μ} |B ∩ (B + γ(n))|; quadrature = grid
/// average of |1̂_B|^2 S_{λ,μ}. An explicit grid below the Nyquist bound is a
/// ContractViolation; an empty grid selects nyquist_grid.
CountIdentity average_count_identity(const GridSet& b, std::int64_t lambda, std::int64_t mu,
                                     std::span<const std::int64_t> grid = {});

struct PlancherelCheck {
  double lhs = 0.0;  // grid average of |1̂_B|^2
  double rhs = 0.0;  // |B|
};

PlancherelCheck plancherel_check(const GridSet& b);

/// One product of periodic arcs: on axis j the set of α_j within half_width_j
/// of centre_j + (1/period_j)ℤ. An axis with 2 w_j p_j >= 1 covers the whole
/// circle.
struct BoxComponent {
  std::vector<Rational> centre;
  std::vector<Rational> half_width;
  std::vector<BigInt> period;
  int sign = 1;

  bool full_axis(int axis) const;
  bool contains(const TorusPoint& beta) const;
  /// Product over axes of 1 (interior), 1/2 (boundary) or 0 (outside).
  double boundary_weight(const TorusPoint& beta) const;
};

/// Signed union of components, optionally pulled back by T_λ: α belongs to
/// the region with weight Σ sign · 1[T_λ α ∈ component].
struct BoxRegion {
  int dimension = 1;
  std::vector<BoxComponent> components;
  std::optional<TLambda> pullback;

  static BoxRegion full_torus(int dimension);
  static BoxRegion single_box(std::vector<Rational> centre, std::vector<Rational> half_width);

  /// ContractViolation on malformed components or on two components of the
  /// same sign that overlap in positive measure.
  void validate() const;
  int weight(const TorusPoint& alpha) const;
  /// Same signed sum with boundary points counted by boundary_weight; the
  /// Riemann sums use it.
  double quadrature_weight(const TorusPoint& alpha) const;
  /// Smallest non-full half-width on each axis (1/2 when every component is
  /// full there).
  std::vector<Rational> min_half_width() const;
};

/// M_{q,L} as a single periodic component. Half-widths above 1/2 are clamped,
/// which leaves that axis unconstrained exactly as the family definition does.
BoxComponent family_component(const BoxFamily& family, int sign);

/// Ω_{η,λ,μ} = outer - inner, pulled back by T_λ when requested. A degenerate
/// outer family is represented exactly through clamping; a degenerate inner
/// family is a ContractViolation.
BoxRegion omega_region(const ArcSystem& sys, bool pulled_back);

/// ∫_region |1̂_B|^2 = Σ_d r_B(d) Î_region(d) with closed-form box integrals.
/// ResourceError when (#lags × #components) exceeds `budget`.
double box_region_mass(const GridSet& b, const BoxRegion& region,
                       std::int64_t budget = std::int64_t{1} << 28);

/// Same integral by a uniform Riemann sum on the grid g/G. Each G_j must
/// satisfy 1/G_j <= (smallest half-width on axis j)/8. Without a pull-back a
/// point is weighted by the fraction of its grid cell inside each box; with a
/// pull-back, points exactly on a box face count 1/2 per axis.
double riemann_mass(const GridSet& b, const BoxRegion& region,
                    std::span<const std::int64_t> grid);

/// Grid meeting the Riemann resolution rule with at least `oversample`
/// points per unit of the set side, rounded up to a fast FFT size.
std::vector<std::int64_t> riemann_grid(const BoxRegion& region, std::int64_t side,
                                       std::int64_t oversample = 8);

}  // namespace polyrec
