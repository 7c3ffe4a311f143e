#pragma once

// Recurrence profiles n -> |A ∩ (A + P(n))|, ε-optimal return times and the
// desk-scale Khintchine experiment.

#include <cstdint>
#include <string>
#include <vector>

#include "polyrec/core.hpp"
#include "polyrec/generators.hpp"
#include "polyrec/rational.hpp"

namespace polyrec {

struct RecurrenceProfile {
  /// counts[n] for n = 0..L.
  std::vector<std::int64_t> counts;
  /// The shift used at each n: {P(n)} for sets, γ(n) for grids.
  std::vector<std::vector<std::int64_t>> shifts;
  /// N for a set in [1,N], M^k for a grid.
  std::int64_t universe_size = 0;
  std::int64_t set_cardinality = 0;

  std::int64_t range_end() const { return static_cast<std::int64_t>(counts.size()) - 1; }
};

/// Direct bit-parallel evaluation, one shifted popcount per n.
RecurrenceProfile profile_direct(const DenseSet& a, const Polynomial& p, std::int64_t range_end);

/// Full autocorrelation of the indicator by FFT, sampled at P(n). Agrees
/// exactly with profile_direct; a reconstruction further than 0.25 from an
/// integer raises PrecisionError.
RecurrenceProfile profile_fft(const DenseSet& a, const Polynomial& p, std::int64_t range_end,
                              std::int64_t fft_budget = std::int64_t{1} << 26);

/// counts[n] = |B ∩ (B + γ(n))|.
RecurrenceProfile profile_grid(const GridSet& b, std::int64_t range_end);

struct ReturnTimeSet {
  Rational epsilon;
  std::vector<std::int64_t> times;
  std::int64_t range_end = 0;
};

/// All n in [0, L] with counts[n]/U > (|A|/U)^2 - ε, decided in exact integer
/// arithmetic (U the universe size).
ReturnTimeSet optimal_returns(const RecurrenceProfile& prof, const Rational& epsilon);

struct GapStats {
  std::int64_t count = 0;
  double density = 0.0;      // count / (L + 1)
  std::int64_t max_gap = 0;  // including the boundary gaps to 0 and L
  // Same statistics with the trivial member n = 0 removed; density over L.
  std::int64_t positive_count = 0;
  double positive_density = 0.0;
  std::int64_t positive_max_gap = 0;
};

GapStats gap_stats(const ReturnTimeSet& r);

/// Largest L with L^k <= n.
std::int64_t integer_root(std::int64_t n, int k);

struct KhintchineConfig {
  std::int64_t universe_size = 0;
  Polynomial poly = Polynomial::monomial(2);
  Rational epsilon = Rational(1, 100);
  int trials = 1;
  std::uint64_t seed = 0;
  SetGenerator generator;
  /// Defaults to floor(N^(1/k)).
  std::int64_t range_end = -1;
};

struct KhintchineTrial {
  std::uint64_t seed = 0;
  std::int64_t cardinality = 0;
  GapStats stats;
};

struct KhintchineSummary {
  std::int64_t range_end = 0;
  std::vector<KhintchineTrial> trials;
  double min_density = 0.0;
  double mean_density = 0.0;
  double min_positive_density = 0.0;
  double mean_positive_density = 0.0;
};

/// Trial t uses seed + t. Deterministic for a given configuration.
KhintchineSummary khintchine_experiment(const KhintchineConfig& config);

}  // namespace polyrec
