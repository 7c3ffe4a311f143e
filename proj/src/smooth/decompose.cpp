#include <algorithm>
#include <cmath>

#include "polyrec/checked.hpp"
#include "polyrec/error.hpp"
#include "polyrec/kernels.hpp"
#include "polyrec/parallel.hpp"
#include "polyrec/smooth.hpp"
#include "polyrec/spectral.hpp"

namespace polyrec {

namespace {

std::int64_t cell_count(int dimension, std::int64_t side) {
  std::int64_t n = 1;
  for (int j = 0; j < dimension; ++j) n = checked::mul(n, side);
  if (n > (std::int64_t{1} << 27)) throw ResourceError("weighted function exceeds the cell budget");
  return n;
}

void require_same_domain(const WeightedFunction& a, const WeightedFunction& b) {
  if (a.dimension != b.dimension || a.side != b.side || a.origin != b.origin) {
    throw ContractViolation("functions live on different domains");
  }
}

// For every row of the region where both m and m - v lie in the domain, calls
// row(index of m, index of m - v, row length). Rows run along axis 0.
template <class Row>
void for_each_overlap_row(const WeightedFunction& f, std::span<const std::int64_t> v, Row&& row) {
  const int k = f.dimension;
  const std::int64_t side = f.side;
  std::vector<std::int64_t> lo(static_cast<std::size_t>(k)), hi(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    const std::int64_t d = v[jj];
    if (d >= side || d <= -side) return;
    lo[jj] = std::max<std::int64_t>(0, d);
    hi[jj] = std::min<std::int64_t>(side, side + d);
  }
  std::int64_t shift = 0, stride = 1;
  for (int j = 0; j < k; ++j) {
    shift += v[static_cast<std::size_t>(j)] * stride;
    stride *= side;
  }
  const std::int64_t len = hi[0] - lo[0];
  std::vector<std::int64_t> idx(lo.begin(), lo.end());
  while (true) {
    std::int64_t at = 0, st = 1;
    for (int j = 0; j < k; ++j) {
      at += idx[static_cast<std::size_t>(j)] * st;
      st *= side;
    }
    row(at, at - shift, len);
    int j = 1;
    for (; j < k; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      if (++idx[jj] < hi[jj]) break;
      idx[jj] = lo[jj];
    }
    if (j >= k) break;
  }
}

double pairwise(const double* v, std::size_t n) {
  if (n <= 16) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise(v, half) + pairwise(v + half, n - half);
}

}  // namespace

WeightedFunction WeightedFunction::zeros(int dimension, std::int64_t side, std::int64_t origin) {
  if (dimension < 1 || side < 1) throw ContractViolation("weighted function needs k >= 1 and side >= 1");
  WeightedFunction f;
  f.dimension = dimension;
  f.side = side;
  f.origin = origin;
  f.values.assign(static_cast<std::size_t>(cell_count(dimension, side)), 0.0);
  return f;
}

WeightedFunction WeightedFunction::indicator(const GridSet& b) {
  WeightedFunction f = zeros(b.dimension(), b.side());
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = b.cells()[i];
  return f;
}

WeightedFunction WeightedFunction::from_values(int dimension, std::int64_t side,
                                               std::vector<double> values) {
  WeightedFunction f = zeros(dimension, side);
  if (values.size() != f.values.size()) throw ContractViolation("value count does not match side^k");
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw ContractViolation("weighted function values must lie in [0, 1]");
  }
  f.values = std::move(values);
  return f;
}

double WeightedFunction::at(std::span<const std::int64_t> point) const {
  if (static_cast<int>(point.size()) != dimension) throw ContractViolation("point has the wrong dimension");
  std::int64_t idx = 0, stride = 1;
  for (int j = 0; j < dimension; ++j) {
    const std::int64_t c = point[static_cast<std::size_t>(j)] - origin;
    if (c < 0 || c >= side) return 0.0;
    idx += c * stride;
    stride *= side;
  }
  return values[static_cast<std::size_t>(idx)];
}

double WeightedFunction::sum() const { return pairwise(values.data(), values.size()); }

double WeightedFunction::mean(std::int64_t cube_side) const {
  return sum() / std::pow(static_cast<double>(cube_side), dimension);
}

WeightedFunction WeightedFunction::extended(std::int64_t margin) const {
  if (margin < 0) throw ContractViolation("margin must be >= 0");
  if (margin == 0) return *this;
  WeightedFunction out = zeros(dimension, side + 2 * margin, origin - margin);
  std::vector<std::int64_t> idx(static_cast<std::size_t>(dimension), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::int64_t dst = 0, stride = 1;
    for (int j = 0; j < dimension; ++j) {
      dst += (idx[static_cast<std::size_t>(j)] + margin) * stride;
      stride *= out.side;
    }
    out.values[static_cast<std::size_t>(dst)] = values[i];
    for (auto& c : idx) {
      if (++c < side) break;
      c = 0;
    }
  }
  return out;
}

double lambda_count(const WeightedFunction& g, const WeightedFunction& h, std::int64_t q,
                    std::int64_t lambda, std::int64_t mu) {
  require_same_domain(g, h);
  if (q < 1 || mu < 1 || lambda < 0) throw ContractViolation("lambda_count needs q >= 1, mu >= 1, lambda >= 0");
  const auto dot = kernels::active_kernels().dot_f64;
  const std::int64_t top = checked::add(lambda, mu);
  double total = 0.0;
  for (std::int64_t n = (lambda / q + 1) * q; n <= top; n += q) {
    std::vector<std::int64_t> v;
    try {
      v = curve_point(g.dimension, n);
    } catch (const OverflowError&) {
      continue;  // the shift leaves every finite domain
    }
    double inner = 0.0;
    for_each_overlap_row(g, v, [&](std::int64_t at, std::int64_t back, std::int64_t len) {
      inner += dot(g.values.data() + at, h.values.data() + back, static_cast<std::size_t>(len));
    });
    total += inner;
  }
  return static_cast<double>(q) / static_cast<double>(mu) * total;
}

WeightedFunction convolve(const WeightedFunction& f, const LatticeCutoff& cut, std::int64_t margin) {
  if (margin < 0) throw ContractViolation("margin must be >= 0");
  if (cut.k != f.dimension) throw ContractViolation("cutoff and function dimensions differ");
  const ConvolutionKernel kernel = cutoff_kernel(cut, f.side - 1 + margin);
  const WeightedFunction src = f.extended(margin);
  WeightedFunction out = WeightedFunction::zeros(f.dimension, src.side, src.origin);
  // out(m) = Σ_z w_z src(m - z), offsets in kernel order.
  for (std::size_t o = 0; o < kernel.offsets.size(); ++o) {
    const double weight = kernel.weights[o];
    for_each_overlap_row(src, kernel.offsets[o], [&](std::int64_t at, std::int64_t back, std::int64_t len) {
      double* dst = out.values.data() + at;
      const double* s = src.values.data() + back;
      for (std::int64_t i = 0; i < len; ++i) dst[i] += weight * s[i];
    });
  }
  return out;
}

Decomposition decompose(const WeightedFunction& f, const BigInt& q, const Rational& L1,
                        const Rational& L2, std::int64_t lambda, std::int64_t margin) {
  if (L1 < L2) throw ContractViolation("decompose needs L1 >= L2");
  if (L2 <= 0) throw ContractViolation("decompose needs positive scales");
  if (q < 1) throw ContractViolation("decompose needs q >= 1");
  std::optional<BigInt> shear;
  if (lambda > 0) shear = from_int64(lambda);
  const LatticeCutoff c1{q, L1, f.dimension, shear};
  const LatticeCutoff c2{q, L2, f.dimension, shear};
  Decomposition d;
  d.f = f.extended(margin);
  WeightedFunction a1 = convolve(f, c1, margin);
  WeightedFunction a2 = convolve(f, c2, margin);
  d.f1 = a1;
  d.f2 = d.f;
  d.f3 = a2;
  for (std::size_t i = 0; i < d.f.values.size(); ++i) {
    d.f2.values[i] = d.f.values[i] - a2.values[i];
    d.f3.values[i] = a2.values[i] - a1.values[i];
  }
  return d;
}

SplittingCheck splitting_check(const Decomposition& d, std::int64_t q, std::int64_t lambda,
                               std::int64_t mu) {
  SplittingCheck s;
  s.whole = lambda_count(d.f, d.f, q, lambda, mu);
  s.main = lambda_count(d.f1, d.f1, q, lambda, mu);
  s.star = lambda_count(d.f2, d.f1, q, lambda, mu) + lambda_count(d.f, d.f2, q, lambda, mu);
  s.lambda_f3_f1 = lambda_count(d.f3, d.f1, q, lambda, mu);
  s.lambda_f_f3 = lambda_count(d.f, d.f3, q, lambda, mu);
  s.star2 = s.lambda_f3_f1 + s.lambda_f_f3;
  return s;
}

double domination_integral(const WeightedFunction& f, const BigInt& q, const Rational& L1,
                           const Rational& L2, std::int64_t lambda,
                           std::span<const std::int64_t> grid) {
  const auto power = power_spectrum(f.values, f.dimension, f.side, f.origin, grid);
  std::optional<BigInt> shear;
  if (lambda > 0) shear = from_int64(lambda);
  const LatticeCutoff c1{q, L1, f.dimension, shear};
  const LatticeCutoff c2{q, L2, f.dimension, shear};
  const TLambda t(f.dimension, shear ? *shear : BigInt(0));
  std::vector<double> terms(power.size(), 0.0);
  parallel_for(power.size(), [&](std::size_t i) {
    std::vector<Rational> coords;
    std::int64_t rest = static_cast<std::int64_t>(i);
    for (auto g : grid) {
      coords.push_back(ratio(from_int64(rest % g), from_int64(g)));
      rest /= g;
    }
    const TorusPoint beta = t.apply(TorusPoint(std::move(coords)));
    terms[i] = power[i] * std::abs(phi_hat_qL(c2, beta) - phi_hat_qL(c1, beta));
  });
  return pairwise(terms.data(), terms.size()) / static_cast<double>(power.size());
}

double near_invariance(const WeightedFunction& f1, std::int64_t n) {
  const auto v = curve_point(f1.dimension, n);
  double worst = 0.0;
  for_each_overlap_row(f1, v, [&](std::int64_t at, std::int64_t back, std::int64_t len) {
    for (std::int64_t i = 0; i < len; ++i) {
      worst = std::max(worst, std::abs(f1.values[static_cast<std::size_t>(at + i)] -
                                       f1.values[static_cast<std::size_t>(back + i)]));
    }
  });
  return worst;
}

double wholepoint_sup(std::int64_t q, const Rational& L2, std::int64_t lambda, std::int64_t mu,
                      int k, std::int64_t samples, std::uint64_t seed) {
  std::optional<BigInt> shear;
  if (lambda > 0) shear = from_int64(lambda);
  const LatticeCutoff cut{from_int64(q), L2, k, shear};
  std::vector<TorusPoint> points;
  std::uint64_t state = seed;
  for (std::int64_t s = 0; s < samples; ++s) points.push_back(random_torus_point(k, state));
  std::vector<double> value(points.size(), 0.0);
  parallel_for(points.size(), [&](std::size_t s) {
    const double cutoff_value = shear ? psi_hat(cut, points[s]) : phi_hat_qL(cut, points[s]);
    value[s] = std::abs((1.0 - cutoff_value) * weyl_S_div(lambda, mu, q, points[s]));
  });
  double sup = 0.0;
  for (double v : value) sup = std::max(sup, v);
  return sup;
}

EtaSearch lacunary_eta_search(const Rational& epsilon, const Rational& eta0, const Rational& ratio_step,
                              int steps, int k, std::int64_t lambda, std::int64_t mu,
                              std::int64_t samples, std::uint64_t seed) {
  if (ratio_step <= 0 || ratio_step >= 1) throw ContractViolation("lacunary ratio must lie in (0, 1)");
  EtaSearch out;
  Rational eta = eta0;
  for (int j = 0; j <= steps; ++j) {
    out.etas.push_back(eta);
    eta *= ratio_step;
  }
  std::optional<BigInt> shear;
  if (lambda > 0) shear = from_int64(lambda);
  const Rational mu_q(from_int64(mu));
  for (int j = 0; j < steps; ++j) {
    const auto& a = out.etas[static_cast<std::size_t>(j)];
    const auto& b = out.etas[static_cast<std::size_t>(j + 1)];
    const LatticeCutoff ca{q_eta(a, k), pow(a, k) * mu_q, k, shear};
    const LatticeCutoff cb{q_eta(b, k), pow(b, k) * mu_q, k, shear};
    std::uint64_t state = seed + static_cast<std::uint64_t>(j);
    double sup = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
      const TorusPoint alpha = random_torus_point(k, state);
      const double va = shear ? psi_hat(ca, alpha) : phi_hat_qL(ca, alpha);
      const double vb = shear ? psi_hat(cb, alpha) : phi_hat_qL(cb, alpha);
      sup = std::max(sup, std::abs(vb - va));
    }
    out.sups.push_back(sup);
    if (sup <= to_double(epsilon) / 40.0) {
      out.index = j;
      break;
    }
  }
  return out;
}

}  // namespace polyrec
