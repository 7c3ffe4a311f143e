#include "kernels_impl.hpp"

#if defined(POLYREC_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#define POLYREC_AVX2 __attribute__((target("avx2,popcnt")))

namespace polyrec::kernels::detail {

namespace {

// Nibble-table popcount; per-64-bit-lane totals accumulate through sad_epu8.
POLYREC_AVX2 inline __m256i popcount_lanes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo),
                                      _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

POLYREC_AVX2 inline std::uint64_t horizontal_sum(__m256i acc) {
  alignas(32) std::uint64_t parts[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(parts), acc);
  return parts[0] + parts[1] + parts[2] + parts[3];
}

}  // namespace

POLYREC_AVX2 std::uint64_t and_shift_popcount_avx2(const std::uint64_t* words,
                                                   std::size_t nwords, std::uint64_t shift) {
  const std::uint64_t word_shift = shift / 64;
  const unsigned bit_shift = static_cast<unsigned>(shift % 64);
  if (word_shift >= nwords) return 0;
  __m256i acc = _mm256_setzero_si256();
  std::uint64_t total = 0;
  std::size_t i;
  if (bit_shift == 0) {
    i = word_shift;
    for (; i + 4 <= nwords; i += 4) {
      const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
      const __m256i src =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i - word_shift));
      acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(cur, src)));
    }
    for (; i < nwords; ++i) {
      total += static_cast<std::uint64_t>(_mm_popcnt_u64(words[i] & words[i - word_shift]));
    }
    return total + horizontal_sum(acc);
  }
  total += static_cast<std::uint64_t>(
      _mm_popcnt_u64(words[word_shift] & (words[0] << bit_shift)));
  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(bit_shift));
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(64 - bit_shift));
  i = word_shift + 1;
  for (; i + 4 <= nwords; i += 4) {
    const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    const __m256i hi =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i - word_shift));
    const __m256i lo =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i - word_shift - 1));
    const __m256i shifted = _mm256_or_si256(_mm256_sll_epi64(hi, left), _mm256_srl_epi64(lo, right));
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(cur, shifted)));
  }
  for (; i < nwords; ++i) {
    const std::uint64_t shifted = (words[i - word_shift] << bit_shift) |
                                  (words[i - word_shift - 1] >> (64 - bit_shift));
    total += static_cast<std::uint64_t>(_mm_popcnt_u64(words[i] & shifted));
  }
  return total + horizontal_sum(acc);
}

POLYREC_AVX2 std::uint64_t and_count_bytes_avx2(const std::uint8_t* a, const std::uint8_t* b,
                                                std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_and_si256(va, vb), zero));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += a[i] & b[i];
  return total;
}

POLYREC_AVX2 double dot_f64_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, prod);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) {
    const double p = a[i] * b[i];
    sum = sum + p;
  }
  return sum;
}

}  // namespace polyrec::kernels::detail

#endif
