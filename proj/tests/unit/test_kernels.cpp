#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <random>
#include <vector>

#include "polyrec/kernels.hpp"

using namespace polyrec::kernels;

namespace {

std::uint64_t naive_and_shift(const std::vector<std::uint64_t>& w, std::uint64_t shift) {
  const std::uint64_t bits = w.size() * 64;
  std::uint64_t c = 0;
  auto bit = [&](std::uint64_t p) { return (w[p / 64] >> (p % 64)) & 1u; };
  for (std::uint64_t p = shift; p < bits; ++p) c += bit(p) & bit(p - shift);
  return c;
}

}  // namespace

TEST_CASE("scalar and_shift_popcount matches bit enumeration") {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 17u}) {
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) x = rng();
    for (std::uint64_t s = 0; s < n * 64 + 3; ++s) {
      CHECK(scalar_kernels().and_shift_popcount(w.data(), n, s) == naive_and_shift(w, s));
    }
  }
}

TEST_CASE("scalar and_count_bytes and dot_f64") {
  const std::vector<std::uint8_t> a{1, 0, 1, 1, 0, 1, 1};
  const std::vector<std::uint8_t> b{1, 1, 1, 0, 0, 1, 0};
  CHECK(scalar_kernels().and_count_bytes(a.data(), b.data(), a.size()) == 3);
  const std::vector<double> x{1, 2, 3, 4, 5, 6, 7};
  const std::vector<double> y{1, 1, 1, 1, 1, 1, 1};
  CHECK(scalar_kernels().dot_f64(x.data(), y.data(), x.size()) == 28.0);
  CHECK(scalar_kernels().dot_f64(x.data(), y.data(), 0) == 0.0);
}

TEST_CASE("AVX2 variants are bit-identical to the scalar reference") {
  const KernelTable* v = avx2_kernels();
  if (v == nullptr) {
    MESSAGE("no AVX2 variant on this machine; equivalence not exercised");
    return;
  }
  const KernelTable& s = scalar_kernels();
  std::mt19937_64 rng(42);
  for (std::size_t n = 0; n < 70; ++n) {
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) x = rng();
    for (std::uint64_t shift : {0ull, 1ull, 63ull, 64ull, 65ull, 130ull, 1000ull, 4480ull}) {
      CHECK(v->and_shift_popcount(w.data(), n, shift) == s.and_shift_popcount(w.data(), n, shift));
    }
    std::vector<std::uint8_t> a(n * 7), b(n * 7);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = rng() & 1u;
      b[i] = rng() & 1u;
    }
    CHECK(v->and_count_bytes(a.data(), b.data(), a.size()) == s.and_count_bytes(a.data(), b.data(), a.size()));
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::vector<double> x(n * 3 + 1), y(n * 3 + 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    const double dv = v->dot_f64(x.data(), y.data(), x.size());
    const double ds = s.dot_f64(x.data(), y.data(), x.size());
    CHECK(std::bit_cast<std::uint64_t>(dv) == std::bit_cast<std::uint64_t>(ds));
  }
}

TEST_CASE("active table is one of the two") {
  const KernelTable& a = active_kernels();
  CHECK((a.name == scalar_kernels().name || (avx2_kernels() && a.name == avx2_kernels()->name)));
}
