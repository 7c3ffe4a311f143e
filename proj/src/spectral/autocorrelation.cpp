#include <algorithm>
#include <map>

#include "polyrec/error.hpp"
#include "polyrec/fft.hpp"
#include "polyrec/spectral.hpp"

namespace polyrec {

namespace {

// Axis 0 fastest: the last axis is the most significant.
bool lag_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  for (std::size_t j = a.size(); j-- > 0;) {
    if (a[j] != b[j]) return a[j] < b[j];
  }
  return false;
}

struct LagLess {
  bool operator()(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
    return lag_less(a, b);
  }
};

}  // namespace

std::int64_t Autocorrelation::at(std::span<const std::int64_t> lag) const {
  if (static_cast<int>(lag.size()) != dimension_) throw ContractViolation("lag has the wrong dimension");
  for (auto d : lag) {
    if (d <= -side_ || d >= side_) return 0;
  }
  if (is_dense()) {
    std::int64_t idx = 0, stride = 1;
    for (int j = 0; j < dimension_; ++j) {
      idx += (lag[static_cast<std::size_t>(j)] + side_ - 1) * stride;
      stride *= 2 * side_ - 1;
    }
    return dense_[static_cast<std::size_t>(idx)];
  }
  const std::vector<std::int64_t> key(lag.begin(), lag.end());
  auto it = std::lower_bound(nonzero_.begin(), nonzero_.end(), key,
                             [](const Entry& e, const std::vector<std::int64_t>& k) {
                               return lag_less(e.lag, k);
                             });
  if (it != nonzero_.end() && it->lag == key) return it->count;
  return 0;
}

Autocorrelation Autocorrelation::from_dense(int dimension, std::int64_t side,
                                            std::int64_t cardinality,
                                            std::vector<std::int64_t> table) {
  Autocorrelation r;
  r.dimension_ = dimension;
  r.side_ = side;
  r.cardinality_ = cardinality;
  r.dense_ = std::move(table);
  std::vector<std::int64_t> lag(static_cast<std::size_t>(dimension), 1 - side);
  for (std::size_t i = 0; i < r.dense_.size(); ++i) {
    if (r.dense_[i] != 0) r.nonzero_.push_back({lag, r.dense_[i]});
    for (std::size_t j = 0; j < lag.size(); ++j) {
      if (++lag[j] < side) break;
      lag[j] = 1 - side;
    }
  }
  return r;
}

Autocorrelation Autocorrelation::from_entries(int dimension, std::int64_t side,
                                              std::int64_t cardinality, std::vector<Entry> entries) {
  Autocorrelation r;
  r.dimension_ = dimension;
  r.side_ = side;
  r.cardinality_ = cardinality;
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return lag_less(a.lag, b.lag); });
  for (auto& e : entries) {
    if (e.count != 0) r.nonzero_.push_back(std::move(e));
  }
  return r;
}

Autocorrelation autocorrelation(const GridSet& b, std::int64_t dense_limit) {
  const int k = b.dimension();
  const std::int64_t m = b.side();
  std::int64_t table_size = 1;
  bool dense = true;
  for (int j = 0; j < k; ++j) {
    if (table_size > dense_limit / (2 * m - 1)) {
      dense = false;
      break;
    }
    table_size *= 2 * m - 1;
  }
  if (dense && table_size <= dense_limit) {
    std::vector<double> data(b.cells().begin(), b.cells().end());
    const std::vector<std::int64_t> dims(static_cast<std::size_t>(k), m);
    const auto raw = fft::autocorrelation(data, dims, std::int64_t{1} << 27);
    return Autocorrelation::from_dense(k, m, b.cardinality(), fft::round_exact(raw));
  }

  const auto members = b.members();
  const auto n = static_cast<double>(members.size());
  if (n * n > 4e9) throw ResourceError("autocorrelation: too many member pairs for the sparse table");
  std::map<std::vector<std::int64_t>, std::int64_t, LagLess> table;
  std::vector<std::int64_t> lag(static_cast<std::size_t>(k));
  for (const auto& x : members) {
    for (const auto& y : members) {
      for (int j = 0; j < k; ++j) {
        lag[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)];
      }
      ++table[lag];
    }
  }
  std::vector<Autocorrelation::Entry> entries;
  entries.reserve(table.size());
  for (auto& [key, count] : table) entries.push_back({key, count});
  return Autocorrelation::from_entries(k, m, b.cardinality(), std::move(entries));
}

}  // namespace polyrec
