#pragma once

#include <cstdint>
#include <string>

#include "polyrec/error.hpp"

namespace polyrec::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
  }
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " - " + std::to_string(b));
  }
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return r;
}

inline std::int64_t pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = mul(r, base);
  return r;
}

}  // namespace polyrec::checked
