#include "polyrec/core.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "polyrec/checked.hpp"
#include "polyrec/error.hpp"
#include "polyrec/kernels.hpp"

namespace polyrec {

Polynomial::Polynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ContractViolation("polynomial needs at least one coefficient");
  if (coeffs_.back() == 0) throw ContractViolation("leading coefficient must be nonzero");
}

Polynomial Polynomial::parse(std::string_view text) {
  std::vector<std::int64_t> coeffs;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    std::string item(text.substr(start, comma - start));
    item.erase(std::remove_if(item.begin(), item.end(), [](char c) { return c == ' '; }),
               item.end());
    if (item.empty()) throw ParseError("empty coefficient in polynomial '" + std::string(text) + "'");
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(item.c_str(), &end, 10);
    if (end == item.c_str() || *end != '\0' || errno == ERANGE) {
      throw ParseError("bad coefficient '" + item + "'");
    }
    coeffs.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.back() == 0) throw ParseError("polynomial '" + std::string(text) + "' is zero");
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::monomial(int k) {
  if (k < 1) throw ContractViolation("monomial degree must be >= 1");
  std::vector<std::int64_t> c(static_cast<std::size_t>(k), 0);
  c.back() = 1;
  return Polynomial(std::move(c));
}

std::int64_t Polynomial::content() const {
  std::int64_t g = 0;
  for (auto c : coeffs_) g = std::gcd(g, c);
  return g == 0 ? 1 : g;
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const auto mag = c < 0 ? -c : c;
    if (mag != 1) os << mag;
    os << "n";
    if (i > 0) os << "^" << (i + 1);
    first = false;
  }
  return os.str();
}

std::int64_t eval_poly(const Polynomial& p, std::int64_t n) {
  // Horner from the top: ((c_k n + c_{k-1}) n + ... + c_1) n.
  std::int64_t acc = 0;
  const auto c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = checked::mul(checked::add(acc, c[i]), n);
  }
  return acc;
}

std::vector<std::int64_t> curve_point(int k, std::int64_t n) {
  if (k < 1) throw ContractViolation("curve dimension must be >= 1");
  std::vector<std::int64_t> out(static_cast<std::size_t>(k));
  std::int64_t pw = 1;
  for (int j = 0; j < k; ++j) {
    pw = checked::mul(pw, n);
    out[static_cast<std::size_t>(j)] = pw;
  }
  return out;
}

// DenseSet -------------------------------------------------------------------

DenseSet::DenseSet(std::int64_t universe_size) : universe_size_(universe_size) {
  if (universe_size < 1) throw ContractViolation("set universe size must be positive");
  words_.assign(static_cast<std::size_t>((universe_size + 63) / 64), 0);
}

DenseSet DenseSet::from_members(std::int64_t universe_size, std::span<const std::int64_t> members) {
  DenseSet s(universe_size);
  for (auto a : members) {
    if (a < 1 || a > universe_size) {
      throw ContractViolation("member " + std::to_string(a) + " outside [1," +
                              std::to_string(universe_size) + "]");
    }
    const auto bit = static_cast<std::uint64_t>(a - 1);
    s.words_[bit / 64] |= std::uint64_t{1} << (bit % 64);
  }
  s.recount();
  return s;
}

DenseSet DenseSet::full(std::int64_t universe_size) {
  DenseSet s(universe_size);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  return from_words(universe_size, std::move(s.words_));
}

DenseSet DenseSet::from_words(std::int64_t universe_size, std::vector<std::uint64_t> words) {
  DenseSet s(universe_size);
  if (words.size() != s.words_.size()) {
    throw ContractViolation("word count does not match universe size");
  }
  const auto tail = static_cast<unsigned>(universe_size % 64);
  if (tail != 0) words.back() &= (std::uint64_t{1} << tail) - 1;
  s.words_ = std::move(words);
  s.recount();
  return s;
}

void DenseSet::recount() {
  std::int64_t total = 0;
  for (auto w : words_) total += __builtin_popcountll(w);
  cardinality_ = total;
}

bool DenseSet::contains(std::int64_t a) const {
  if (a < 1 || a > universe_size_) return false;
  const auto bit = static_cast<std::uint64_t>(a - 1);
  return (words_[bit / 64] >> (bit % 64)) & 1U;
}

std::vector<std::int64_t> DenseSet::members() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(cardinality_));
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      const int tz = __builtin_ctzll(bits);
      out.push_back(static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(tz)) + 1);
      bits &= bits - 1;
    }
  }
  return out;
}

// GridSet --------------------------------------------------------------------

GridSet::GridSet(int dimension, std::int64_t side, std::int64_t cell_budget)
    : dimension_(dimension), side_(side) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw ContractViolation("grid dimension must be in [1," + std::to_string(kMaxDimension) + "]");
  }
  if (side < 1) throw ContractViolation("grid side must be positive");
  std::int64_t cells = 1;
  strides_.resize(static_cast<std::size_t>(dimension));
  for (int j = 0; j < dimension; ++j) {
    strides_[static_cast<std::size_t>(j)] = cells;
    try {
      cells = checked::mul(cells, side);
    } catch (const OverflowError&) {
      throw ResourceError("grid side^dimension overflows");
    }
  }
  if (cells > cell_budget) {
    throw ResourceError("grid of " + std::to_string(cells) + " cells exceeds budget of " +
                        std::to_string(cell_budget));
  }
  cells_.assign(static_cast<std::size_t>(cells), 0);
}

GridSet GridSet::full(int dimension, std::int64_t side, std::int64_t cell_budget) {
  GridSet g(dimension, side, cell_budget);
  std::fill(g.cells_.begin(), g.cells_.end(), std::uint8_t{1});
  g.recount();
  return g;
}

GridSet GridSet::from_points(int dimension, std::int64_t side,
                             std::span<const std::vector<std::int64_t>> points,
                             std::int64_t cell_budget) {
  GridSet g(dimension, side, cell_budget);
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dimension) {
      throw ContractViolation("point dimension does not match grid dimension");
    }
    for (auto x : p) {
      if (x < 1 || x > side) {
        throw ContractViolation("grid point coordinate " + std::to_string(x) + " outside [1," +
                                std::to_string(side) + "]");
      }
    }
    g.cells_[static_cast<std::size_t>(g.index_of(p))] = 1;
  }
  g.recount();
  return g;
}

GridSet GridSet::from_cells(int dimension, std::int64_t side, std::vector<std::uint8_t> cells,
                            std::int64_t cell_budget) {
  GridSet g(dimension, side, cell_budget);
  if (cells.size() != g.cells_.size()) {
    throw ContractViolation("cell array size does not match side^dimension");
  }
  for (auto& c : cells) c = c != 0 ? 1 : 0;
  g.cells_ = std::move(cells);
  g.recount();
  return g;
}

void GridSet::recount() {
  std::int64_t total = 0;
  for (auto c : cells_) total += c;
  cardinality_ = total;
}

std::int64_t GridSet::index_of(std::span<const std::int64_t> point) const {
  std::int64_t idx = 0;
  for (int j = 0; j < dimension_; ++j) {
    idx += (point[static_cast<std::size_t>(j)] - 1) * strides_[static_cast<std::size_t>(j)];
  }
  return idx;
}

std::vector<std::int64_t> GridSet::point_at(std::int64_t index) const {
  std::vector<std::int64_t> p(static_cast<std::size_t>(dimension_));
  for (int j = 0; j < dimension_; ++j) {
    p[static_cast<std::size_t>(j)] = index % side_ + 1;
    index /= side_;
  }
  return p;
}

bool GridSet::contains(std::span<const std::int64_t> point) const {
  if (static_cast<int>(point.size()) != dimension_) return false;
  for (auto x : point) {
    if (x < 1 || x > side_) return false;
  }
  return cells_[static_cast<std::size_t>(index_of(point))] != 0;
}

std::vector<std::vector<std::int64_t>> GridSet::members() const {
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(static_cast<std::size_t>(cardinality_));
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i]) out.push_back(point_at(static_cast<std::int64_t>(i)));
  }
  return out;
}

// Operations -----------------------------------------------------------------

ResidueSplit residue_split(const DenseSet& a, const Polynomial& p) {
  ResidueSplit split;
  split.modulus = p.content();
  const auto m = split.modulus;
  std::vector<std::vector<std::int64_t>> buckets(static_cast<std::size_t>(m));
  for (auto x : a.members()) buckets[static_cast<std::size_t>(x % m)].push_back(x);
  split.classes.reserve(static_cast<std::size_t>(m));
  for (const auto& b : buckets) split.classes.push_back(DenseSet::from_members(a.universe_size(), b));
  return split;
}

std::int64_t shift_intersect_count(const DenseSet& a, std::int64_t d) {
  // |A ∩ (A + d)| = |A ∩ (A - d)| by swapping the roles of the pair.
  if (d == INT64_MIN) return 0;
  const std::int64_t shift = d < 0 ? -d : d;
  if (shift >= a.universe_size()) return 0;
  const auto words = a.words();
  return static_cast<std::int64_t>(kernels::active_kernels().and_shift_popcount(
      words.data(), words.size(), static_cast<std::uint64_t>(shift)));
}

std::int64_t grid_shift_intersect_count(const GridSet& b, std::span<const std::int64_t> v) {
  const int k = b.dimension();
  if (static_cast<int>(v.size()) != k) {
    throw ContractViolation("shift vector has " + std::to_string(v.size()) +
                            " components, grid dimension is " + std::to_string(k));
  }
  const std::int64_t m = b.side();
  // Range of b along each axis such that both b and b - v lie in [1, M].
  std::vector<std::int64_t> lo(static_cast<std::size_t>(k)), hi(static_cast<std::size_t>(k));
  std::int64_t offset = 0;
  for (int j = 0; j < k; ++j) {
    const auto vj = v[static_cast<std::size_t>(j)];
    if (vj >= m || vj <= -m) return 0;
    lo[static_cast<std::size_t>(j)] = std::max<std::int64_t>(1, 1 + vj);
    hi[static_cast<std::size_t>(j)] = std::min<std::int64_t>(m, m + vj);
    offset += vj * b.stride(j);
  }
  const auto& kern = kernels::active_kernels();
  const auto cells = b.cells();
  const std::int64_t row_len = hi[0] - lo[0] + 1;
  // Odometer over the outer axes; axis 0 is contiguous.
  std::vector<std::int64_t> pos(lo.begin(), lo.end());
  std::uint64_t total = 0;
  while (true) {
    const std::int64_t start = b.index_of(pos);
    total += kern.and_count_bytes(cells.data() + start, cells.data() + (start - offset),
                                  static_cast<std::size_t>(row_len));
    int axis = 1;
    while (axis < k) {
      auto& p = pos[static_cast<std::size_t>(axis)];
      if (++p <= hi[static_cast<std::size_t>(axis)]) break;
      p = lo[static_cast<std::size_t>(axis)];
      ++axis;
    }
    if (axis >= k) break;
  }
  return static_cast<std::int64_t>(total);
}

}  // namespace polyrec
