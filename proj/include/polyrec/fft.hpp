#pragma once

// Thin FFTW wrappers for the dense transforms the library needs. Arrays use
// the library layout (axis 0 fastest); the wrappers reverse the dimension
// order for FFTW's row-major convention. Plans use FFTW_ESTIMATE so results
// do not depend on timing measurements.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace polyrec::fft {

/// Smallest n' >= n of the form 2^a 3^b 5^c 7^d.
std::int64_t good_size(std::int64_t n);

/// Unnormalized forward DFT, X(t) = sum_m x(m) exp(-2 pi i m.t / n).
std::vector<std::complex<double>> forward(std::span<const std::complex<double>> data,
                                          std::span<const std::int64_t> dims);

/// Forward DFT of a real array zero-padded to `padded` per axis.
std::vector<std::complex<double>> forward_padded(std::span<const double> data,
                                                 std::span<const std::int64_t> dims,
                                                 std::span<const std::int64_t> padded);

/// Linear autocorrelation r(d) = sum_m x(m) x(m - d) for every lag with
/// |d_j| < dims_j. Output has 2*dims_j - 1 entries per axis, lag d stored at
/// d_j + dims_j - 1. Throws ResourceError if the padded transform would hold
/// more than `budget` points.
std::vector<double> autocorrelation(std::span<const double> data,
                                    std::span<const std::int64_t> dims, std::int64_t budget);

/// Rounds each value to the nearest integer; PrecisionError if any value is
/// 0.25 or more away from an integer.
std::vector<std::int64_t> round_exact(std::span<const double> values, double tolerance = 0.25);

}  // namespace polyrec::fft
