#pragma once

// Inner loops shared by the counting code. Every kernel has a portable
// scalar reference and, where the target supports it, an AVX2 variant picked
// at runtime. Variants are required to return bit-identical results: the
// integer kernels trivially, and dot_f64 by accumulating in the same four
// lanes in the same order in both versions.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace polyrec::kernels {

/// Number of bit positions p with bit p of `words` and bit p-shift of `words`
/// both set, i.e. popcount(words & (words << shift)) over the whole array.
/// Bits shifted past the end are dropped.
using AndShiftPopcountFn = std::uint64_t (*)(const std::uint64_t* words, std::size_t nwords,
                                             std::uint64_t shift);

/// Number of i < n with a[i] == b[i] == 1. Inputs must be 0/1 occupancy bytes.
using AndCountBytesFn = std::uint64_t (*)(const std::uint8_t* a, const std::uint8_t* b,
                                          std::size_t n);

/// Sum of a[i]*b[i] accumulated in four interleaved lanes (lane = i mod 4),
/// combined as (l0+l1)+(l2+l3), followed by the tail in index order.
using DotF64Fn = double (*)(const double* a, const double* b, std::size_t n);

struct KernelTable {
  std::string_view name;
  AndShiftPopcountFn and_shift_popcount;
  AndCountBytesFn and_count_bytes;
  DotF64Fn dot_f64;
};

const KernelTable& scalar_kernels();

/// nullptr when the build has no AVX2 variant or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// The table used by the library: AVX2 when available, scalar otherwise.
/// Setting POLYREC_SIMD=scalar in the environment forces the reference path.
const KernelTable& active_kernels();

}  // namespace polyrec::kernels
