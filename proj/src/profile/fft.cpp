#include "polyrec/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

#include "polyrec/error.hpp"

namespace polyrec::fft {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<int> fftw_dims(std::span<const std::int64_t> dims) {
  std::vector<int> out(dims.rbegin(), dims.rend());
  return out;
}

std::int64_t product(std::span<const std::int64_t> dims) {
  std::int64_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

}  // namespace

std::int64_t good_size(std::int64_t n) {
  if (n <= 1) return 1;
  for (std::int64_t m = n;; ++m) {
    std::int64_t r = m;
    for (std::int64_t f : {2, 3, 5, 7}) {
      while (r % f == 0) r /= f;
    }
    if (r == 1) return m;
  }
}

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> data,
                                          std::span<const std::int64_t> dims) {
  const auto total = product(dims);
  if (static_cast<std::int64_t>(data.size()) != total) {
    throw ContractViolation("fft input size does not match dimensions");
  }
  std::vector<std::complex<double>> out(data.begin(), data.end());
  const auto nd = fftw_dims(dims);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto* buf = reinterpret_cast<fftw_complex*>(out.data());
    plan = fftw_plan_dft(static_cast<int>(nd.size()), nd.data(), buf, buf, FFTW_FORWARD,
                         FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

std::vector<std::complex<double>> forward_padded(std::span<const double> data,
                                                 std::span<const std::int64_t> dims,
                                                 std::span<const std::int64_t> padded) {
  const std::size_t k = dims.size();
  if (padded.size() != k) throw ContractViolation("padding rank mismatch");
  for (std::size_t j = 0; j < k; ++j) {
    if (padded[j] < dims[j]) throw ContractViolation("padded size smaller than data");
  }
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(product(padded)));
  // Scatter with an odometer over the source array.
  std::vector<std::int64_t> idx(k, 0);
  for (std::size_t src = 0; src < data.size(); ++src) {
    std::int64_t dst = 0, stride = 1;
    for (std::size_t j = 0; j < k; ++j) {
      dst += idx[j] * stride;
      stride *= padded[j];
    }
    buf[static_cast<std::size_t>(dst)] = data[src];
    for (std::size_t j = 0; j < k; ++j) {
      if (++idx[j] < dims[j]) break;
      idx[j] = 0;
    }
  }
  return forward(buf, padded);
}

std::vector<double> autocorrelation(std::span<const double> data,
                                    std::span<const std::int64_t> dims, std::int64_t budget) {
  const std::size_t k = dims.size();
  std::vector<std::int64_t> padded(k), out_dims(k);
  std::int64_t total = 1;
  for (std::size_t j = 0; j < k; ++j) {
    out_dims[j] = 2 * dims[j] - 1;
    padded[j] = good_size(out_dims[j]);
    total *= padded[j];
    if (total > budget) {
      throw ResourceError("FFT of " + std::to_string(total) + "+ points exceeds budget of " +
                          std::to_string(budget));
    }
  }
  // Real-to-complex along the innermost FFTW axis (our axis 0).
  std::vector<double> real(static_cast<std::size_t>(total), 0.0);
  {
    std::vector<std::int64_t> idx(k, 0);
    for (std::size_t src = 0; src < data.size(); ++src) {
      std::int64_t dst = 0, stride = 1;
      for (std::size_t j = 0; j < k; ++j) {
        dst += idx[j] * stride;
        stride *= padded[j];
      }
      real[static_cast<std::size_t>(dst)] = data[src];
      for (std::size_t j = 0; j < k; ++j) {
        if (++idx[j] < dims[j]) break;
        idx[j] = 0;
      }
    }
  }
  const std::int64_t half = padded[0] / 2 + 1;
  const std::int64_t spectrum_size = total / padded[0] * half;
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(spectrum_size));
  const auto nd = fftw_dims(padded);
  fftw_plan fwd, inv;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_r2c(static_cast<int>(k), nd.data(), real.data(),
                            reinterpret_cast<fftw_complex*>(spec.data()), FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r(static_cast<int>(k), nd.data(),
                            reinterpret_cast<fftw_complex*>(spec.data()), real.data(),
                            FFTW_ESTIMATE);
  }
  fftw_execute(fwd);
  for (auto& c : spec) c = std::complex<double>(std::norm(c), 0.0);
  fftw_execute(inv);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
  }
  const double scale = 1.0 / static_cast<double>(total);
  std::int64_t out_total = 1;
  for (auto d : out_dims) out_total *= d;
  std::vector<double> out(static_cast<std::size_t>(out_total));
  std::vector<std::int64_t> lag(k);
  for (std::size_t j = 0; j < k; ++j) lag[j] = -(dims[j] - 1);
  for (std::int64_t o = 0; o < out_total; ++o) {
    std::int64_t src = 0, stride = 1;
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t wrapped = lag[j] < 0 ? lag[j] + padded[j] : lag[j];
      src += wrapped * stride;
      stride *= padded[j];
    }
    out[static_cast<std::size_t>(o)] = real[static_cast<std::size_t>(src)] * scale;
    for (std::size_t j = 0; j < k; ++j) {
      if (++lag[j] <= dims[j] - 1) break;
      lag[j] = -(dims[j] - 1);
    }
  }
  return out;
}

std::vector<std::int64_t> round_exact(std::span<const double> values, double tolerance) {
  std::vector<std::int64_t> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double r = std::nearbyint(values[i]);
    if (std::fabs(values[i] - r) >= tolerance || !std::isfinite(values[i])) {
      throw PrecisionError("FFT value " + std::to_string(values[i]) + " at index " +
                           std::to_string(i) + " is not within " + std::to_string(tolerance) +
                           " of an integer");
    }
    out[i] = static_cast<std::int64_t>(r);
  }
  return out;
}

}  // namespace polyrec::fft
