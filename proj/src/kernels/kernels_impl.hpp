#pragma once

#include <cstddef>
#include <cstdint>

namespace polyrec::kernels::detail {

std::uint64_t and_shift_popcount_scalar(const std::uint64_t* words, std::size_t nwords,
                                        std::uint64_t shift);
std::uint64_t and_count_bytes_scalar(const std::uint8_t* a, const std::uint8_t* b,
                                     std::size_t n);
double dot_f64_scalar(const double* a, const double* b, std::size_t n);

#if defined(__x86_64__) || defined(__i386__)
#define POLYREC_HAVE_AVX2_KERNELS 1
std::uint64_t and_shift_popcount_avx2(const std::uint64_t* words, std::size_t nwords,
                                      std::uint64_t shift);
std::uint64_t and_count_bytes_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
double dot_f64_avx2(const double* a, const double* b, std::size_t n);
#endif

}  // namespace polyrec::kernels::detail
