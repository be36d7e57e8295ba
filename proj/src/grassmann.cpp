#include "fermag/grassmann.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace fermag {

namespace {

void require_same(const GrassmannPoly& p, const GrassmannPoly& q) {
  if (p.generator_count() != q.generator_count()) {
    throw std::domain_error("grassmann: generator count mismatch");
  }
}

}  // namespace

GrassmannPoly::GrassmannPoly(int generator_count) : generators_(generator_count) {
  if (generator_count < 0 || generator_count > 2 * kMaxSites) {
    throw std::domain_error("grassmann: generator count out of range");
  }
}

GrassmannPoly GrassmannPoly::constant(int generator_count, cplx value) {
  GrassmannPoly p(generator_count);
  p.add(0, value);
  return p;
}

GrassmannPoly GrassmannPoly::generator(int generator_count, int index) {
  if (index < 1 || index > generator_count) throw std::domain_error("grassmann: generator index out of range");
  return monomial(generator_count, Mask{1} << (index - 1), 1.0);
}

GrassmannPoly GrassmannPoly::monomial(int generator_count, Mask mask, cplx coeff) {
  GrassmannPoly p(generator_count);
  if (generator_count < 32 && (mask >> generator_count) != 0) {
    throw std::domain_error("grassmann: monomial uses a generator beyond the count");
  }
  p.add(mask, coeff);
  return p;
}

cplx GrassmannPoly::coefficient(Mask mask) const {
  const auto it = terms_.find(mask);
  return it == terms_.end() ? cplx{} : it->second;
}

bool GrassmannPoly::is_even() const {
  for (const auto& [mask, c] : terms_) {
    if (std::popcount(mask) & 1) return false;
  }
  return true;
}

void GrassmannPoly::add(Mask mask, cplx c) {
  auto [it, inserted] = terms_.emplace(mask, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kGrassmannPrune) terms_.erase(it);
}

GrassmannPoly GrassmannPoly::operator+(const GrassmannPoly& other) const {
  require_same(*this, other);
  GrassmannPoly out = *this;
  for (const auto& [mask, c] : other.terms_) out.add(mask, c);
  return out;
}

GrassmannPoly GrassmannPoly::operator-(const GrassmannPoly& other) const { return *this + other * -1.0; }

GrassmannPoly GrassmannPoly::operator*(cplx s) const {
  GrassmannPoly out(generators_);
  for (const auto& [mask, c] : terms_) out.add(mask, c * s);
  return out;
}

double GrassmannPoly::max_deviation(const GrassmannPoly& other) const {
  require_same(*this, other);
  double worst = 0.0;
  for (const auto& [mask, c] : terms_) worst = std::max(worst, std::abs(c - other.coefficient(mask)));
  for (const auto& [mask, c] : other.terms_) worst = std::max(worst, std::abs(c - coefficient(mask)));
  return worst;
}

int interleave_sign(Mask left, Mask right) {
  // Each generator of `right` must hop over every generator of `left` with a
  // larger index.
  int swaps = 0;
  for (Mask rest = right; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(left >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

GrassmannPoly poly_mul(const GrassmannPoly& p, const GrassmannPoly& q) {
  require_same(p, q);
  GrassmannPoly out(p.generator_count());
  for (const auto& [a, ca] : p.terms()) {
    for (const auto& [b, cb] : q.terms()) {
      if ((a & b) != 0) continue;
      out.add(a | b, static_cast<double>(interleave_sign(a, b)) * ca * cb);
    }
  }
  return out;
}

GrassmannPoly poly_exp(const GrassmannPoly& p) {
  if (std::abs(p.constant_term()) > 0.0) throw std::domain_error("poly_exp: nonzero constant term");
  const int n = p.generator_count();
  GrassmannPoly result = GrassmannPoly::constant(n, 1.0);
  GrassmannPoly power = GrassmannPoly::constant(n, 1.0);
  for (int l = 1; l <= n && !power.terms().empty(); ++l) {
    power = poly_mul(power, p) * (1.0 / l);
    result = result + power;
  }
  return result;
}

GrassmannPoly poly_log(const GrassmannPoly& p) {
  if (std::abs(p.constant_term() - 1.0) > 1e-12) throw std::domain_error("poly_log: constant term is not 1");
  const int n = p.generator_count();
  GrassmannPoly x = p;
  x.add(0, -p.constant_term());
  GrassmannPoly result(n);
  GrassmannPoly power = GrassmannPoly::constant(n, 1.0);
  for (int l = 1; l <= n; ++l) {
    power = poly_mul(power, x);
    if (power.terms().empty()) break;
    result = result + power * ((l % 2 == 1 ? 1.0 : -1.0) / l);
  }
  return result;
}

GrassmannPoly scale_generators(const GrassmannPoly& p, double c) {
  GrassmannPoly out(p.generator_count());
  for (const auto& [mask, coeff] : p.terms()) out.add(mask, coeff * std::pow(c, std::popcount(mask)));
  return out;
}

GrassmannPoly derivative(const GrassmannPoly& p, int index) {
  if (index < 1 || index > p.generator_count()) throw std::domain_error("derivative: generator index out of range");
  const Mask bit = Mask{1} << (index - 1);
  GrassmannPoly out(p.generator_count());
  for (const auto& [mask, c] : p.terms()) {
    if ((mask & bit) == 0) continue;
    const int before = std::popcount(mask & (bit - 1));
    out.add(mask ^ bit, (before & 1) ? -c : c);
  }
  return out;
}

cplx left_derivative(const GrassmannPoly& p, LadderIndexSet set) {
  // d/dxi^J = d_{j_k} ... d_{j_1}: the smallest index acts first.
  // Only the term whose mask equals J survives at xi = 0.
  GrassmannPoly current = GrassmannPoly::monomial(p.generator_count(), set.mask(), p.coefficient(set.mask()));
  for (int j : set.indices()) {
    current = derivative(current, j);
    if (current.terms().empty()) return 0.0;
  }
  return current.constant_term();
}

}  // namespace fermag
