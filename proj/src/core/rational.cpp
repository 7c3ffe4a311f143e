#include "polyrec/rational.hpp"

#include <cmath>

#include "polyrec/error.hpp"

namespace polyrec {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!is_integer_text(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

Rational parse_decimal(std::string_view s) {
  // [sign] digits [. digits] [e [sign] digits]
  std::string text(s);
  bool negative = false;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_dot) --scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("not a number: '" + text + "'");
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw ParseError("not a number: '" + text + "'");
    std::string_view rest(text);
    rest.remove_prefix(pos + 1);
    if (!is_integer_text(rest) || rest.size() > 6) throw ParseError("bad exponent in '" + text + "'");
    scale += std::stol(std::string(rest));
  }
  Rational r(BigInt(digits, 10));
  if (scale > 0) {
    r *= Rational(pow(BigInt(10), static_cast<unsigned long>(scale)));
  } else if (scale < 0) {
    r /= Rational(pow(BigInt(10), static_cast<unsigned long>(-scale)));
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty number");
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    BigInt num = parse_integer(trim(s.substr(0, slash)));
    BigInt den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (is_integer_text(s)) return Rational(parse_integer(s));
  return parse_decimal(s);
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& r) { return r.get_str(10); }
std::string to_string(const BigInt& z) { return z.get_str(10); }

BigInt floor_of(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt ceil_of(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ContractViolation("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational frac(const Rational& r) {
  Rational f = r - Rational(floor_of(r));
  f.canonicalize();
  return f;
}

Rational circle_norm(const Rational& r) {
  Rational f = frac(r);
  Rational g = 1 - f;
  return f <= g ? f : g;
}

Rational pow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw ContractViolation("zero to a negative power");
    return pow(Rational(1) / base, -exp);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

std::int64_t to_int64(const BigInt& z) {
  static_assert(sizeof(long) == sizeof(std::int64_t), "GMP si accessors assume LP64");
  if (!mpz_fits_slong_p(z.get_mpz_t())) {
    throw OverflowError("value " + z.get_str() + " exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(mpz_get_si(z.get_mpz_t()));
}

BigInt from_int64(std::int64_t v) { return BigInt(static_cast<long>(v)); }

Rational snap_rational(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw ParseError("cannot snap a non-finite value");
  if (max_den < 1) throw ContractViolation("snap_rational needs max_den >= 1");
  // Exact binary value of x, then continued-fraction convergents.
  Rational exact(x);
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = exact;
  const BigInt limit = from_int64(max_den);
  Rational best(floor_of(exact));
  for (int iter = 0; iter < 128; ++iter) {
    BigInt a = floor_of(rest);
    BigInt p2 = a * p1 + p0;
    BigInt q2 = a * q1 + q0;
    if (q2 > limit) break;
    best = Rational(p2, q2);
    best.canonicalize();
    Rational f = rest - Rational(a);
    if (f == 0) break;
    rest = 1 / f;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return best;
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace polyrec
