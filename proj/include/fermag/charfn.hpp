#pragma once

// Moments M_J = tr(rho a^J), the characteristic function 1 + sum_J M_J xi^J,
// cumulants (Grassmann logarithm and set-partition expansion) and Wick
// predictions from the covariance matrix.

#include <span>
#include <vector>

#include "fermag/fock.hpp"
#include "fermag/grassmann.hpp"

namespace fermag {

/// Values indexed by every subset J of [2m] with |J| <= max_order.
class SubsetTable {
 public:
  SubsetTable(ModeCount modes, int max_order);

  ModeCount modes() const { return modes_; }
  int max_order() const { return max_order_; }
  std::size_t subset_count() const { return values_.size(); }

  bool covers(Mask mask) const;
  cplx at(Mask mask) const;
  cplx at(LadderIndexSet set) const { return at(set.mask()); }
  void set(Mask mask, cplx value);

  /// Masks with the given cardinality, increasing.
  std::vector<Mask> masks_of_order(int order) const;
  double max_deviation(const SubsetTable& other) const;

 private:
  ModeCount modes_;
  int max_order_;
  std::vector<cplx> values_;
};

class MomentTable : public SubsetTable {
 public:
  using SubsetTable::SubsetTable;
};

class CumulantTable : public SubsetTable {
 public:
  using SubsetTable::SubsetTable;
};

/// Sigma_ij = tr({a_i a_j} rho); antisymmetric with zero diagonal.
class CovarianceMatrix {
 public:
  CovarianceMatrix(CMatrix entries, ModeCount modes);

  const CMatrix& matrix() const { return entries_; }
  ModeCount modes() const { return modes_; }

 private:
  CMatrix entries_;
  ModeCount modes_;
};

/// Default table order: everything for m <= 4, caller must choose above that.
int default_max_order(ModeCount modes);

MomentTable moments(const DensityMatrix& rho, int max_order);
MomentTable moments(const DensityMatrix& rho);

GrassmannPoly characteristic_function(const MomentTable& table);
MomentTable moments_from_characteristic(const GrassmannPoly& chi, int max_order);

CumulantTable cumulants_via_log(const GrassmannPoly& chi, int max_order);
CumulantTable cumulants_via_log(const GrassmannPoly& chi);
CumulantTable cumulants_via_partitions(const MomentTable& table, int max_order);
CumulantTable cumulants_via_partitions(const MomentTable& table);

CovarianceMatrix covariance_from_moments(const MomentTable& table);

/// Sign of the permutation sorting the concatenation of blocks (each block in
/// increasing order, blocks taken in the given order) into increasing order.
int block_concat_sign(std::span<const Mask> blocks);

cplx pfaffian(const CMatrix& a);
cplx wick_predict(const CovarianceMatrix& sigma, LadderIndexSet set);

}  // namespace fermag
