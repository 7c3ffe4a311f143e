#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"
#include "polyrec/kernels.hpp"

namespace polyrec::kernels {

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &detail::and_shift_popcount_scalar,
                                 &detail::and_count_bytes_scalar, &detail::dot_f64_scalar};
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(POLYREC_HAVE_AVX2_KERNELS)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  }();
  static const KernelTable table{"avx2", &detail::and_shift_popcount_avx2,
                                 &detail::and_count_bytes_avx2, &detail::dot_f64_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const char* force = std::getenv("POLYREC_SIMD");
    if (force != nullptr && std::string_view(force) == "scalar") return &scalar_kernels();
    const KernelTable* fast = avx2_kernels();
    return fast != nullptr ? fast : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace polyrec::kernels
