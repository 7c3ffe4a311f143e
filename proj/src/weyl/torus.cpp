#include "polyrec/torus.hpp"

#include <cmath>
#include <numbers>

#include "polyrec/error.hpp"

namespace polyrec {

TorusPoint::TorusPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ContractViolation("torus point needs at least one coordinate");
  for (auto& c : coords_) c = frac(c);
}

TorusPoint TorusPoint::zero(int k) {
  if (k < 1) throw ContractViolation("torus dimension must be >= 1");
  return TorusPoint(std::vector<Rational>(static_cast<std::size_t>(k), Rational(0)));
}

TorusPoint TorusPoint::parse(std::string_view text) { return TorusPoint(parse_rational_list(text)); }

std::vector<double> TorusPoint::float_view() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(to_double(c));
  return out;
}

std::string TorusPoint::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ',';
    s += polyrec::to_string(coords_[i]);
  }
  return s;
}

std::complex<double> unit_phase(double theta) {
  // Fold into [-1/2, 1/2) so the argument of sin/cos stays small.
  double t = theta - std::floor(theta);
  if (t >= 0.5) t -= 1.0;
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> unit_phase(const Rational& x) { return unit_phase(to_double(frac(x))); }

TorusPoint dilate(const BigInt& q, const TorusPoint& alpha) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(alpha.dim()));
  BigInt qj = 1;
  for (int j = 1; j <= alpha.dim(); ++j) {
    qj *= q;
    out.emplace_back(alpha.coord(j) * Rational(qj));
  }
  return TorusPoint(std::move(out));
}

namespace {

std::complex<double> pairwise_range(const std::complex<double>* t, std::size_t n) {
  if (n <= 16) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += t[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_range(t, half) + pairwise_range(t + half, n - half);
}

}  // namespace

std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& terms) {
  return pairwise_range(terms.data(), terms.size());
}

}  // namespace polyrec
