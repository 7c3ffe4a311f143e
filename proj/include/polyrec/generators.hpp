#pragma once

// Deterministic set generators for experiments.
//
// Structured specs follow the grammar
//   spec := "ap:" q "+" j | "interval:" a "-" b | "union(" spec "," spec ")"
// where ap:q+j is { n in [1,N] : n = j mod q }.

#include <cstdint>
#include <string>
#include <string_view>

#include "polyrec/core.hpp"
#include "polyrec/rational.hpp"

namespace polyrec {

/// Each n in [1, N] is kept independently with probability δ. The stream is
/// mt19937_64 seeded with `seed`; n is kept iff its draw x satisfies
/// x * den(δ) < num(δ) * 2^64, so the result is portable across platforms.
DenseSet gen_random_set(std::int64_t universe_size, const Rational& density, std::uint64_t seed);

/// ParseError on malformed specs.
DenseSet gen_structured_set(std::int64_t universe_size, std::string_view spec);

/// Random grid with per-cell probability δ, same stream convention.
GridSet gen_random_grid(int dimension, std::int64_t side, const Rational& density,
                        std::uint64_t seed);

/// Experiment input description: "random:<δ>", "full", or a structured spec.
struct SetGenerator {
  enum class Kind { random, full, structured };
  Kind kind = Kind::full;
  Rational density = 1;
  std::string spec;

  static SetGenerator parse(std::string_view text);
  DenseSet generate(std::int64_t universe_size, std::uint64_t seed) const;
  std::string to_string() const;
};

}  // namespace polyrec
