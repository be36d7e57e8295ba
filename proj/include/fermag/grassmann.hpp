#pragma once

// Sparse polynomials over 2m anticommuting Grassmann generators ordered
// (xi_1^*, xi_1, ..., xi_m^*, xi_m). A term is keyed by the bitmask of its
// generators and stored in canonical increasing order; any reordering sign
// is folded into the coefficient.

#include <map>

#include "fermag/fock.hpp"

namespace fermag {

inline constexpr double kGrassmannPrune = 1e-14;

class GrassmannPoly {
 public:
  explicit GrassmannPoly(int generator_count);

  static GrassmannPoly constant(int generator_count, cplx value);
  /// The single generator with 1-based index.
  static GrassmannPoly generator(int generator_count, int index);
  static GrassmannPoly monomial(int generator_count, Mask mask, cplx coeff);

  int generator_count() const { return generators_; }
  const std::map<Mask, cplx>& terms() const { return terms_; }
  cplx coefficient(Mask mask) const;
  cplx constant_term() const { return coefficient(0); }
  bool is_even() const;

  /// Accumulates c into the coefficient of mask (pruned afterwards).
  void add(Mask mask, cplx c);

  GrassmannPoly operator+(const GrassmannPoly& other) const;
  GrassmannPoly operator-(const GrassmannPoly& other) const;
  GrassmannPoly operator*(cplx s) const;

  /// Largest coefficient difference over the union of supports.
  double max_deviation(const GrassmannPoly& other) const;

 private:
  int generators_;
  std::map<Mask, cplx> terms_;
};

/// Sign of the permutation that sorts the concatenation (left, right) of two
/// disjoint canonical monomials into canonical order.
int interleave_sign(Mask left, Mask right);

GrassmannPoly poly_mul(const GrassmannPoly& p, const GrassmannPoly& q);
GrassmannPoly poly_exp(const GrassmannPoly& p);
GrassmannPoly poly_log(const GrassmannPoly& p);
GrassmannPoly scale_generators(const GrassmannPoly& p, double c);

/// Single left derivative d/d(generator index).
GrassmannPoly derivative(const GrassmannPoly& p, int index);
/// Ordered left derivative d/d xi^J evaluated at xi = 0.
cplx left_derivative(const GrassmannPoly& p, LadderIndexSet set);

}  // namespace fermag
