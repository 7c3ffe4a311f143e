#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polyrec {

using BigInt = mpz_class;
using Rational = mpq_class;

// Parses "a/b", a signed integer, or a plain decimal such as "0.25" or "-1e-3"
// into an exact rational. Decimals are taken at face value, so "0.3" is 3/10.
Rational parse_rational(std::string_view text);

// Comma separated list of rationals, e.g. "1/2,3/7,0".
std::vector<Rational> parse_rational_list(std::string_view text);

// num/den in canonical form; den must be nonzero.
Rational ratio(const BigInt& num, const BigInt& den);

std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);

// Representative of r modulo 1 in [0, 1).
Rational frac(const Rational& r);

// Distance from r to the nearest integer, in [0, 1/2].
Rational circle_norm(const Rational& r);

Rational pow(const Rational& base, long exp);
BigInt pow(const BigInt& base, unsigned long exp);

// Exact conversion when the value fits, otherwise OverflowError.
std::int64_t to_int64(const BigInt& z);

BigInt from_int64(std::int64_t v);

// Best rational approximation with denominator at most max_den, found by
// walking the continued fraction of x. The result is within 1/(den*max_den)
// of x.
Rational snap_rational(double x, std::int64_t max_den = 1'000'000'000);

double to_double(const Rational& r);

}  // namespace polyrec
