#include "kernels_impl.hpp"

namespace polyrec::kernels::detail {

std::uint64_t and_shift_popcount_scalar(const std::uint64_t* words, std::size_t nwords,
                                        std::uint64_t shift) {
  const std::uint64_t word_shift = shift / 64;
  const unsigned bit_shift = static_cast<unsigned>(shift % 64);
  if (word_shift >= nwords) return 0;
  std::uint64_t total = 0;
  if (bit_shift == 0) {
    for (std::size_t i = word_shift; i < nwords; ++i) {
      total += static_cast<std::uint64_t>(__builtin_popcountll(words[i] & words[i - word_shift]));
    }
    return total;
  }
  // First word only receives the low part of its source.
  total += static_cast<std::uint64_t>(
      __builtin_popcountll(words[word_shift] & (words[0] << bit_shift)));
  for (std::size_t i = word_shift + 1; i < nwords; ++i) {
    const std::uint64_t shifted = (words[i - word_shift] << bit_shift) |
                                  (words[i - word_shift - 1] >> (64 - bit_shift));
    total += static_cast<std::uint64_t>(__builtin_popcountll(words[i] & shifted));
  }
  return total;
}

std::uint64_t and_count_bytes_scalar(const std::uint8_t* a, const std::uint8_t* b,
                                     std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += a[i] & b[i];
  return total;
}

double dot_f64_scalar(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double p = a[i + l] * b[i + l];
      lane[l] = lane[l] + p;
    }
  }
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) {
    const double p = a[i] * b[i];
    sum = sum + p;
  }
  return sum;
}

}  // namespace polyrec::kernels::detail
