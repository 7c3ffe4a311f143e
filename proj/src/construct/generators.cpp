#include "polyrec/generators.hpp"

#include <random>

#include "polyrec/error.hpp"

namespace polyrec {

namespace {

// Keep-decision for one draw: x * den < num * 2^64.
class BernoulliStream {
 public:
  BernoulliStream(const Rational& p, std::uint64_t seed) : rng_(seed) {
    if (p < 0 || p > 1) throw ContractViolation("density must lie in [0, 1]");
    always_ = p == 1;
    never_ = p == 0;
    if (!always_ && !never_) {
      // Both fit in 64 bits after scaling down when needed.
      if (!mpz_fits_ulong_p(p.get_den_mpz_t())) {
        throw ContractViolation("density denominator must fit in 64 bits");
      }
      num_ = mpz_get_ui(p.get_num_mpz_t());
      den_ = mpz_get_ui(p.get_den_mpz_t());
    }
  }

  bool next() {
    const std::uint64_t x = rng_();
    if (always_) return true;
    if (never_) return false;
    const unsigned __int128 lhs = static_cast<unsigned __int128>(x) * den_;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(num_) << 64;
    return lhs < rhs;
  }

 private:
  std::mt19937_64 rng_;
  bool always_ = false;
  bool never_ = false;
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

struct SpecParser {
  std::string_view text;
  std::size_t pos = 0;
  std::int64_t n;
  std::vector<std::uint64_t>& words;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("set spec '" + std::string(text) + "': " + why + " at offset " +
                     std::to_string(pos));
  }

  bool consume(std::string_view token) {
    if (text.substr(pos, token.size()) == token) {
      pos += token.size();
      return true;
    }
    return false;
  }

  std::int64_t integer() {
    const std::size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start || (pos == start + 1 && text[start] == '-')) fail("expected an integer");
    try {
      return std::stoll(std::string(text.substr(start, pos - start)));
    } catch (...) {
      fail("integer out of range");
    }
  }

  void mark(std::int64_t x) {
    if (x >= 1 && x <= n) {
      const auto bit = static_cast<std::uint64_t>(x - 1);
      words[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
  }

  void spec() {
    if (consume("ap:")) {
      const auto q = integer();
      if (!consume("+")) fail("expected '+'");
      const auto j = integer();
      if (q < 1) fail("modulus must be positive");
      std::int64_t first = ((j % q) + q) % q;
      if (first == 0) first = q;
      for (std::int64_t x = first; x <= n; x += q) mark(x);
    } else if (consume("interval:")) {
      const auto a = integer();
      if (!consume("-")) fail("expected '-'");
      const auto b = integer();
      for (std::int64_t x = std::max<std::int64_t>(a, 1); x <= std::min(b, n); ++x) mark(x);
    } else if (consume("union(")) {
      spec();
      if (!consume(",")) fail("expected ','");
      spec();
      if (!consume(")")) fail("expected ')'");
    } else {
      fail("unknown spec");
    }
  }
};

}  // namespace

DenseSet gen_random_set(std::int64_t universe_size, const Rational& density, std::uint64_t seed) {
  BernoulliStream stream(density, seed);
  DenseSet empty(universe_size);
  std::vector<std::uint64_t> words(empty.words().size(), 0);
  for (std::int64_t x = 0; x < universe_size; ++x) {
    if (stream.next()) words[static_cast<std::size_t>(x / 64)] |= std::uint64_t{1} << (x % 64);
  }
  return DenseSet::from_words(universe_size, std::move(words));
}

DenseSet gen_structured_set(std::int64_t universe_size, std::string_view spec) {
  DenseSet empty(universe_size);
  std::vector<std::uint64_t> words(empty.words().size(), 0);
  SpecParser parser{spec, 0, universe_size, words};
  parser.spec();
  if (parser.pos != spec.size()) parser.fail("trailing characters");
  return DenseSet::from_words(universe_size, std::move(words));
}

GridSet gen_random_grid(int dimension, std::int64_t side, const Rational& density,
                        std::uint64_t seed) {
  GridSet shape(dimension, side);
  BernoulliStream stream(density, seed);
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(shape.cell_count()));
  for (auto& c : cells) c = stream.next() ? 1 : 0;
  return GridSet::from_cells(dimension, side, std::move(cells));
}

SetGenerator SetGenerator::parse(std::string_view text) {
  SetGenerator g;
  if (text == "full") {
    g.kind = Kind::full;
  } else if (text.substr(0, 7) == "random:") {
    g.kind = Kind::random;
    g.density = parse_rational(text.substr(7));
    if (g.density < 0 || g.density > 1) throw ParseError("random density must lie in [0, 1]");
  } else {
    g.kind = Kind::structured;
    g.spec = std::string(text);
    gen_structured_set(1, g.spec);  // syntax check
  }
  return g;
}

DenseSet SetGenerator::generate(std::int64_t universe_size, std::uint64_t seed) const {
  switch (kind) {
    case Kind::random:
      return gen_random_set(universe_size, density, seed);
    case Kind::full:
      return DenseSet::full(universe_size);
    case Kind::structured:
      return gen_structured_set(universe_size, spec);
  }
  throw ContractViolation("unknown generator kind");
}

std::string SetGenerator::to_string() const {
  switch (kind) {
    case Kind::random:
      return "random:" + polyrec::to_string(density);
    case Kind::full:
      return "full";
    case Kind::structured:
      return spec;
  }
  return {};
}

}  // namespace polyrec
