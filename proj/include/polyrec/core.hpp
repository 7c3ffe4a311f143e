#pragma once

// Foundational value types: the shift polynomial, the moment curve, finite
// integer sets in one and k dimensions, and residue-class splitting.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polyrec {

/// Integer polynomial P(n) = c_1 n + ... + c_k n^k. There is no constant
/// slot, so P(0) = 0 holds by construction.
class Polynomial {
 public:
  /// `coeffs[i]` is the coefficient of n^(i+1). The last entry must be
  /// nonzero.
  explicit Polynomial(std::vector<std::int64_t> coeffs);

  /// Comma separated c_1,...,c_k, e.g. "0,1" for n^2.
  static Polynomial parse(std::string_view text);

  /// The monomial n^k.
  static Polynomial monomial(int k);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  std::span<const std::int64_t> coeffs() const { return coeffs_; }
  /// Coefficient of n^power, for 1 <= power <= degree().
  std::int64_t coeff(int power) const { return coeffs_.at(static_cast<std::size_t>(power - 1)); }
  std::int64_t leading() const { return coeffs_.back(); }

  /// gcd of the coefficients, zero coefficients ignored; always >= 1.
  std::int64_t content() const;

  std::string to_string() const;

  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// P(n) with overflow-checked arithmetic (OverflowError).
std::int64_t eval_poly(const Polynomial& p, std::int64_t n);

/// The moment curve point (n, n^2, ..., n^k).
std::vector<std::int64_t> curve_point(int k, std::int64_t n);

/// Finite subset of [1, N] held as a bit array (bit a-1 <-> member a).
class DenseSet {
 public:
  explicit DenseSet(std::int64_t universe_size);

  /// Members outside [1, N] raise ContractViolation; duplicates are merged.
  static DenseSet from_members(std::int64_t universe_size, std::span<const std::int64_t> members);
  static DenseSet full(std::int64_t universe_size);
  /// Takes ownership of raw words; bits beyond N are cleared.
  static DenseSet from_words(std::int64_t universe_size, std::vector<std::uint64_t> words);

  std::int64_t universe_size() const { return universe_size_; }
  std::int64_t cardinality() const { return cardinality_; }
  bool empty() const { return cardinality_ == 0; }
  double density() const {
    return static_cast<double>(cardinality_) / static_cast<double>(universe_size_);
  }

  bool contains(std::int64_t a) const;
  std::vector<std::int64_t> members() const;
  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const DenseSet& other) const {
    return universe_size_ == other.universe_size_ && words_ == other.words_;
  }

 private:
  void recount();

  std::int64_t universe_size_;
  std::vector<std::uint64_t> words_;
  std::int64_t cardinality_ = 0;
};

/// Finite subset of [1, M]^k as dense 0/1 occupancy. Axis 0 varies fastest.
class GridSet {
 public:
  static constexpr std::int64_t kDefaultCellBudget = std::int64_t{1} << 27;
  static constexpr int kMaxDimension = 4;

  GridSet(int dimension, std::int64_t side, std::int64_t cell_budget = kDefaultCellBudget);

  static GridSet full(int dimension, std::int64_t side,
                      std::int64_t cell_budget = kDefaultCellBudget);
  static GridSet from_points(int dimension, std::int64_t side,
                             std::span<const std::vector<std::int64_t>> points,
                             std::int64_t cell_budget = kDefaultCellBudget);
  /// `cells` must have side^dimension entries; nonzero bytes become 1.
  static GridSet from_cells(int dimension, std::int64_t side, std::vector<std::uint8_t> cells,
                            std::int64_t cell_budget = kDefaultCellBudget);

  int dimension() const { return dimension_; }
  std::int64_t side() const { return side_; }
  std::int64_t cell_count() const { return static_cast<std::int64_t>(cells_.size()); }
  std::int64_t cardinality() const { return cardinality_; }
  double density() const {
    return static_cast<double>(cardinality_) / static_cast<double>(cell_count());
  }

  /// Linear offset of one unit step along `axis`.
  std::int64_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }
  /// Linear index of a point with coordinates in [1, M].
  std::int64_t index_of(std::span<const std::int64_t> point) const;
  std::vector<std::int64_t> point_at(std::int64_t index) const;

  bool contains(std::span<const std::int64_t> point) const;
  std::span<const std::uint8_t> cells() const { return cells_; }
  std::vector<std::vector<std::int64_t>> members() const;

  bool operator==(const GridSet& other) const {
    return dimension_ == other.dimension_ && side_ == other.side_ && cells_ == other.cells_;
  }

 private:
  void recount();

  int dimension_;
  std::int64_t side_;
  std::vector<std::int64_t> strides_;
  std::vector<std::uint8_t> cells_;
  std::int64_t cardinality_ = 0;
};

struct ResidueSplit {
  std::int64_t modulus = 1;
  /// classes[j] = { a in A : a = j mod modulus }.
  std::vector<DenseSet> classes;
};

/// Splits A by residue modulo the content of P.
ResidueSplit residue_split(const DenseSet& a, const Polynomial& p);

/// |{a in A : a - d in A}|, zero once |d| >= N. Symmetric in d.
std::int64_t shift_intersect_count(const DenseSet& a, std::int64_t d);

/// |{b in B : b - v in B}|. `v` must have B.dimension() entries.
std::int64_t grid_shift_intersect_count(const GridSet& b, std::span<const std::int64_t> v);

}  // namespace polyrec
