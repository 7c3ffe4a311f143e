#include <string>

#include "polyrec/error.hpp"
#include "polyrec/spectral.hpp"

namespace polyrec {

namespace {

// Circle distance from x to the lattice (1/p)ℤ.
Rational lattice_distance(const Rational& x, const BigInt& p) {
  return circle_norm(x * Rational(p)) / Rational(p);
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

}  // namespace

bool BoxComponent::full_axis(int axis) const {
  const auto j = static_cast<std::size_t>(axis);
  return 2 * half_width[j] * Rational(period[j]) >= 1;
}

bool BoxComponent::contains(const TorusPoint& beta) const {
  for (std::size_t j = 0; j < centre.size(); ++j) {
    if (full_axis(static_cast<int>(j))) continue;
    const Rational diff = beta.coord(static_cast<int>(j) + 1) - centre[j];
    if (lattice_distance(diff, period[j]) > half_width[j]) return false;
  }
  return true;
}

double BoxComponent::boundary_weight(const TorusPoint& beta) const {
  double w = 1.0;
  for (std::size_t j = 0; j < centre.size(); ++j) {
    if (full_axis(static_cast<int>(j))) continue;
    const Rational diff = beta.coord(static_cast<int>(j) + 1) - centre[j];
    const int c = cmp(lattice_distance(diff, period[j]), half_width[j]);
    if (c > 0) return 0.0;
    if (c == 0) w *= 0.5;
  }
  return w;
}

BoxRegion BoxRegion::full_torus(int dimension) {
  BoxRegion r;
  r.dimension = dimension;
  BoxComponent c;
  c.centre.assign(static_cast<std::size_t>(dimension), Rational(0));
  c.half_width.assign(static_cast<std::size_t>(dimension), Rational(1, 2));
  c.period.assign(static_cast<std::size_t>(dimension), BigInt(1));
  r.components.push_back(std::move(c));
  return r;
}

BoxRegion BoxRegion::single_box(std::vector<Rational> centre, std::vector<Rational> half_width) {
  BoxRegion r;
  r.dimension = static_cast<int>(centre.size());
  BoxComponent c;
  c.centre = std::move(centre);
  c.half_width = std::move(half_width);
  c.period.assign(c.centre.size(), BigInt(1));
  r.components.push_back(std::move(c));
  r.validate();
  return r;
}

void BoxRegion::validate() const {
  if (dimension < 1) throw ContractViolation("region dimension must be >= 1");
  if (pullback && pullback->dim() != dimension) {
    throw ContractViolation("pull-back matrix dimension differs from the region");
  }
  const auto k = static_cast<std::size_t>(dimension);
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& comp = components[c];
    if (comp.centre.size() != k || comp.half_width.size() != k || comp.period.size() != k) {
      throw ContractViolation("box component " + std::to_string(c) + " has the wrong dimension");
    }
    if (comp.sign != 1 && comp.sign != -1) throw ContractViolation("box sign must be +1 or -1");
    for (std::size_t j = 0; j < k; ++j) {
      if (comp.half_width[j] < 0 || comp.half_width[j] > Rational(1, 2)) {
        throw ContractViolation("box half-widths must lie in [0, 1/2]");
      }
      if (comp.period[j] < 1) throw ContractViolation("box period must be >= 1");
    }
  }
  for (std::size_t a = 0; a < components.size(); ++a) {
    for (std::size_t b = a + 1; b < components.size(); ++b) {
      const auto& x = components[a];
      const auto& y = components[b];
      if (x.sign != y.sign) continue;
      bool separated = false;
      for (std::size_t j = 0; j < k && !separated; ++j) {
        if (x.full_axis(static_cast<int>(j)) || y.full_axis(static_cast<int>(j))) continue;
        const BigInt p = lcm(x.period[j], y.period[j]);
        separated = lattice_distance(x.centre[j] - y.centre[j], p) >= x.half_width[j] + y.half_width[j];
      }
      if (!separated) {
        throw ContractViolation("box components " + std::to_string(a) + " and " + std::to_string(b) +
                                " overlap");
      }
    }
  }
}

int BoxRegion::weight(const TorusPoint& alpha) const {
  const TorusPoint beta = pullback ? pullback->apply(alpha) : alpha;
  int w = 0;
  for (const auto& c : components) {
    if (c.contains(beta)) w += c.sign;
  }
  return w;
}

double BoxRegion::quadrature_weight(const TorusPoint& alpha) const {
  const TorusPoint beta = pullback ? pullback->apply(alpha) : alpha;
  double w = 0.0;
  for (const auto& c : components) w += c.sign * c.boundary_weight(beta);
  return w;
}

std::vector<Rational> BoxRegion::min_half_width() const {
  std::vector<Rational> out(static_cast<std::size_t>(dimension), Rational(1, 2));
  for (const auto& c : components) {
    for (int j = 0; j < dimension; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      if (!c.full_axis(j) && c.half_width[jj] < out[jj]) out[jj] = c.half_width[jj];
    }
  }
  return out;
}

BoxComponent family_component(const BoxFamily& family, int sign) {
  BoxComponent c;
  c.sign = sign;
  BigInt qj = 1;
  for (int j = 1; j <= family.k; ++j) {
    qj *= family.q;
    c.centre.emplace_back(0);
    Rational w = family.half_width(j);
    if (w > Rational(1, 2)) w = Rational(1, 2);
    c.half_width.push_back(w);
    c.period.push_back(qj);
  }
  return c;
}

BoxRegion omega_region(const ArcSystem& sys, bool pulled_back) {
  const BoxFamily outer = sys.outer();
  const BoxFamily inner = sys.inner();
  if (inner.degenerate()) {
    throw ContractViolation("inner box family M_{q, eta^-k lambda} is degenerate (half-width > 1/2)");
  }
  if (inner.L < outer.L) throw ContractViolation("annulus needs eta^-k lambda >= eta^k mu");
  BoxRegion r;
  r.dimension = sys.k;
  r.components.push_back(family_component(outer, 1));
  r.components.push_back(family_component(inner, -1));
  if (pulled_back) r.pullback = sys.shear();
  r.validate();
  return r;
}

}  // namespace polyrec
