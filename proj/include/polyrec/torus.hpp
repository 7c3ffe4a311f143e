#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "polyrec/rational.hpp"

namespace polyrec {

/// A point of the k-torus held exactly: each coordinate is a rational in
/// [0, 1). Floating point values are derived only at the last moment.
class TorusPoint {
 public:
  /// Coordinates are reduced modulo 1.
  explicit TorusPoint(std::vector<Rational> coords);

  static TorusPoint zero(int k);
  /// "a1/b1,a2/b2,..." (decimals accepted, taken exactly).
  static TorusPoint parse(std::string_view text);

  int dim() const { return static_cast<int>(coords_.size()); }
  /// Coordinate on axis j, 1 <= j <= dim().
  const Rational& coord(int j) const { return coords_.at(static_cast<std::size_t>(j - 1)); }
  const std::vector<Rational>& coords() const { return coords_; }
  std::vector<double> float_view() const;
  std::string to_string() const;

  bool operator==(const TorusPoint& other) const { return coords_ == other.coords_; }

 private:
  std::vector<Rational> coords_;
};

/// e(x) = exp(2 pi i x) for rational x, reduced modulo 1 before the call to
/// sin/cos.
std::complex<double> unit_phase(const Rational& x);

/// e(θ) for θ already in [0, 1).
std::complex<double> unit_phase(double theta);

/// q∘α = (q α_1, q^2 α_2, ..., q^k α_k).
TorusPoint dilate(const BigInt& q, const TorusPoint& alpha);

/// Pairwise (cascade) summation in index order; fixed association, so the
/// result is deterministic for a given input vector.
std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& terms);

}  // namespace polyrec
