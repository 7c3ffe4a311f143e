#include <cmath>
#include <numbers>
#include <string>

#include "polyrec/checked.hpp"
#include "polyrec/error.hpp"
#include "polyrec/fft.hpp"
#include "polyrec/parallel.hpp"
#include "polyrec/spectral.hpp"

namespace polyrec {

namespace {

double pairwise(const double* v, std::size_t n) {
  if (n <= 16) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise(v, half) + pairwise(v + half, n - half);
}

double pairwise(const std::vector<double>& v) { return pairwise(v.data(), v.size()); }

std::int64_t grid_points(std::span<const std::int64_t> grid, std::int64_t budget) {
  std::int64_t total = 1;
  for (auto g : grid) {
    if (g < 1) throw ContractViolation("grid sizes must be positive");
    if (total > budget / g) throw ResourceError("quadrature grid exceeds the point budget");
    total *= g;
  }
  return total;
}

// Grid point g (axis 0 fastest) as the exact torus point g/G.
TorusPoint grid_point(std::int64_t index, std::span<const std::int64_t> grid) {
  std::vector<Rational> coords;
  coords.reserve(grid.size());
  for (auto g : grid) {
    coords.push_back(ratio(from_int64(index % g), from_int64(g)));
    index /= g;
  }
  return TorusPoint(std::move(coords));
}

std::vector<double> grid_power(const GridSet& b, std::span<const std::int64_t> grid) {
  std::vector<double> values(b.cells().begin(), b.cells().end());
  return power_spectrum(values, b.dimension(), b.side(), 1, grid);
}

// ∫ over one axis of a periodic arc family against e(f x).
std::complex<double> axis_integral(const BoxComponent& c, std::size_t j, const BigInt& f) {
  if (c.full_axis(static_cast<int>(j))) return f == 0 ? 1.0 : 0.0;
  const BigInt& p = c.period[j];
  if (f % p != 0) return 0.0;
  const Rational& w = c.half_width[j];
  if (f == 0) return to_double(2 * w * Rational(p));
  const BigInt t = f / p;
  if (mpz_sizeinbase(t.get_mpz_t(), 2) > 1000) return 0.0;
  const Rational fw = Rational(f) * w;
  const double s = unit_phase(fw).imag();
  return unit_phase(Rational(f) * c.centre[j]) * (s / (std::numbers::pi * to_double(Rational(t))));
}

}  // namespace

std::vector<double> power_spectrum(std::span<const double> values, int dimension,
                                   std::int64_t side, std::int64_t origin,
                                   std::span<const std::int64_t> grid, std::int64_t budget) {
  if (static_cast<int>(grid.size()) != dimension) throw ContractViolation("grid rank differs from dimension");
  const std::int64_t total = grid_points(grid, budget);
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(total));
  std::vector<std::int64_t> idx(static_cast<std::size_t>(dimension), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) {
      std::int64_t dst = 0, stride = 1;
      for (int j = 0; j < dimension; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        std::int64_t r = (origin + idx[jj]) % grid[jj];
        if (r < 0) r += grid[jj];
        dst += r * stride;
        stride *= grid[jj];
      }
      buf[static_cast<std::size_t>(dst)] += values[i];
    }
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (++idx[j] < side) break;
      idx[j] = 0;
    }
  }
  const auto spectrum = fft::forward(buf, grid);
  std::vector<double> out(spectrum.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(spectrum[i]);
  return out;
}

std::vector<std::int64_t> nyquist_grid(int dimension, std::int64_t side, std::int64_t lambda,
                                       std::int64_t mu) {
  std::vector<std::int64_t> grid;
  const std::int64_t top = checked::add(lambda, mu);
  std::int64_t pw = 1;
  for (int j = 1; j <= dimension; ++j) {
    pw = checked::mul(pw, top);
    grid.push_back(fft::good_size(checked::add(checked::mul(2, checked::add(side - 1, pw)), 1)));
  }
  return grid;
}

CountIdentity average_count_identity(const GridSet& b, std::int64_t lambda, std::int64_t mu,
                                     std::span<const std::int64_t> grid) {
  if (mu < 1 || lambda < 0) throw ContractViolation("counting identity needs lambda >= 0 and mu >= 1");
  const int k = b.dimension();
  CountIdentity out;
  const auto minimal = nyquist_grid(k, b.side(), lambda, mu);
  if (grid.empty()) {
    out.grid = minimal;
  } else {
    if (static_cast<int>(grid.size()) != k) throw ContractViolation("grid rank differs from dimension");
    const std::int64_t top = lambda + mu;
    std::int64_t pw = 1;
    for (int j = 0; j < k; ++j) {
      pw = checked::mul(pw, top);
      if (grid[static_cast<std::size_t>(j)] < 2 * (b.side() - 1 + pw) + 1) {
        throw ContractViolation("grid size on axis " + std::to_string(j + 1) +
                                " is below the Nyquist bound 2(M-1+(lambda+mu)^j)+1");
      }
    }
    out.grid.assign(grid.begin(), grid.end());
  }

  BigInt total = 0;
  for (std::int64_t n = lambda + 1; n <= lambda + mu; ++n) {
    total += from_int64(grid_shift_intersect_count(b, curve_point(k, n)));
  }
  out.direct = ratio(total, from_int64(mu));

  const auto power = grid_power(b, out.grid);
  std::vector<double> terms(power.size(), 0.0);
  parallel_for(power.size(), [&](std::size_t i) {
    if (power[i] == 0.0) return;
    const auto s = weyl_S_window(lambda, mu, grid_point(static_cast<std::int64_t>(i), out.grid));
    terms[i] = power[i] * s.real();
  });
  out.quadrature = pairwise(terms) / static_cast<double>(power.size());
  return out;
}

PlancherelCheck plancherel_check(const GridSet& b) {
  const std::vector<std::int64_t> grid(static_cast<std::size_t>(b.dimension()),
                                       fft::good_size(2 * b.side() - 1));
  const auto power = grid_power(b, grid);
  PlancherelCheck out;
  out.lhs = pairwise(power) / static_cast<double>(power.size());
  out.rhs = static_cast<double>(b.cardinality());
  return out;
}

double box_region_mass(const GridSet& b, const BoxRegion& region, std::int64_t budget) {
  region.validate();
  if (region.dimension != b.dimension()) throw ContractViolation("region and set dimensions differ");
  const Autocorrelation r = autocorrelation(b);
  const auto& entries = r.nonzero();
  const auto ncomp = static_cast<std::int64_t>(region.components.size());
  if (ncomp > 0 && static_cast<std::int64_t>(entries.size()) > budget / ncomp) {
    throw ResourceError("box_region_mass: lags x components exceeds the work budget");
  }
  std::vector<double> terms(entries.size(), 0.0);
  parallel_for(entries.size(), [&](std::size_t e) {
    std::vector<BigInt> d;
    d.reserve(entries[e].lag.size());
    for (auto v : entries[e].lag) d.push_back(from_int64(v));
    if (region.pullback) d = region.pullback->inverse_transpose_apply(d);
    std::complex<double> transform = 0.0;
    for (const auto& c : region.components) {
      std::complex<double> prod = 1.0;
      for (std::size_t j = 0; j < d.size() && prod != 0.0; ++j) prod *= axis_integral(c, j, d[j]);
      transform += static_cast<double>(c.sign) * prod;
    }
    terms[e] = static_cast<double>(entries[e].count) * transform.real();
  });
  return pairwise(terms);
}

double riemann_mass(const GridSet& b, const BoxRegion& region, std::span<const std::int64_t> grid) {
  region.validate();
  const int k = b.dimension();
  if (region.dimension != k) throw ContractViolation("region and set dimensions differ");
  if (static_cast<int>(grid.size()) != k) throw ContractViolation("grid rank differs from dimension");
  const auto widths = region.min_half_width();
  for (int j = 0; j < k; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    if (Rational(1, from_int64(grid[jj])) > widths[jj] / 8) {
      throw ContractViolation("riemann_mass: resolution on axis " + std::to_string(j + 1) +
                              " is coarser than 1/8 of the smallest half-width");
    }
  }
  const auto power = grid_power(b, grid);
  std::vector<double> terms(power.size(), 0.0);

  if (!region.pullback) {
    // Membership factorizes per axis: tabulate, for each component and axis,
    // the covered fraction of the grid cell around each point.
    std::vector<std::vector<std::vector<double>>> inside(region.components.size());
    for (std::size_t c = 0; c < region.components.size(); ++c) {
      const auto& comp = region.components[c];
      inside[c].resize(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        auto& row = inside[c][jj];
        row.resize(static_cast<std::size_t>(grid[jj]));
        for (std::int64_t g = 0; g < grid[jj]; ++g) {
          if (comp.full_axis(j)) {
            row[static_cast<std::size_t>(g)] = 1.0;
            continue;
          }
          const Rational x = ratio(from_int64(g), from_int64(grid[jj])) - comp.centre[jj];
          const Rational dist = circle_norm(x * Rational(comp.period[jj])) / Rational(comp.period[jj]);
          // Fraction of the cell [x - h/2, x + h/2] covered by the box.
          const Rational covered = (comp.half_width[jj] - dist) * grid[jj] + Rational(1, 2);
          row[static_cast<std::size_t>(g)] =
              covered >= 1 ? 1.0 : (covered <= 0 ? 0.0 : to_double(covered));
        }
      }
    }
    parallel_for(power.size(), [&](std::size_t i) {
      double w = 0.0;
      for (std::size_t c = 0; c < region.components.size(); ++c) {
        std::int64_t rest = static_cast<std::int64_t>(i);
        double in = 1.0;
        for (int j = 0; j < k && in != 0.0; ++j) {
          const auto jj = static_cast<std::size_t>(j);
          in *= inside[c][jj][static_cast<std::size_t>(rest % grid[jj])];
          rest /= grid[jj];
        }
        w += region.components[c].sign * in;
      }
      terms[i] = w * power[i];
    });
  } else {
    parallel_for(power.size(), [&](std::size_t i) {
      const double w = region.quadrature_weight(grid_point(static_cast<std::int64_t>(i), grid));
      terms[i] = w * power[i];
    });
  }
  return pairwise(terms) / static_cast<double>(power.size());
}

std::vector<std::int64_t> riemann_grid(const BoxRegion& region, std::int64_t side,
                                       std::int64_t oversample) {
  const auto widths = region.min_half_width();
  std::vector<std::int64_t> grid;
  for (const auto& w : widths) {
    const BigInt need = ceil_of(Rational(8) / w);
    std::int64_t g = std::max(to_int64(need), checked::mul(oversample, side));
    grid.push_back(fft::good_size(g));
  }
  return grid;
}

}  // namespace polyrec
