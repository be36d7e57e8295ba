#include "fermag/charfn.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace fermag {

SubsetTable::SubsetTable(ModeCount modes, int max_order)
    : modes_(modes), max_order_(max_order), values_(std::size_t{1} << modes.ladder_count()) {
  if (max_order < 0 || max_order > modes.ladder_count()) {
    throw std::domain_error("subset table: max order " + std::to_string(max_order) + " outside [0, 2m]");
  }
  values_[0] = 1.0;
}

bool SubsetTable::covers(Mask mask) const {
  return mask < values_.size() && std::popcount(mask) <= max_order_;
}

cplx SubsetTable::at(Mask mask) const {
  if (!covers(mask)) throw std::domain_error("subset table: entry not covered by this table");
  return values_[mask];
}

void SubsetTable::set(Mask mask, cplx value) {
  if (!covers(mask)) throw std::domain_error("subset table: entry not covered by this table");
  values_[mask] = value;
}

std::vector<Mask> SubsetTable::masks_of_order(int order) const {
  std::vector<Mask> out;
  for (Mask mask = 0; mask < values_.size(); ++mask) {
    if (std::popcount(mask) == order) out.push_back(mask);
  }
  return out;
}

double SubsetTable::max_deviation(const SubsetTable& other) const {
  if (!(modes_ == other.modes_)) throw std::domain_error("subset table: mode mismatch");
  const int order = std::min(max_order_, other.max_order_);
  double worst = 0.0;
  for (Mask mask = 0; mask < values_.size(); ++mask) {
    if (std::popcount(mask) <= order) worst = std::max(worst, std::abs(values_[mask] - other.values_[mask]));
  }
  return worst;
}

CovarianceMatrix::CovarianceMatrix(CMatrix entries, ModeCount modes) : entries_(std::move(entries)), modes_(modes) {
  const Eigen::Index n = modes.ladder_count();
  if (entries_.rows() != n || entries_.cols() != n) throw std::domain_error("covariance matrix has wrong dimension");
  if (max_abs(entries_ + entries_.transpose()) > tol::kStructural) {
    throw InvariantViolation("covariance matrix is not antisymmetric");
  }
}

int default_max_order(ModeCount modes) {
  if (modes.value() > 4) {
    throw std::domain_error("moment tables for m > 4 need an explicit max order");
  }
  return modes.ladder_count();
}

MomentTable moments(const DensityMatrix& rho, int max_order) {
  const ModeCount modes = rho.modes();
  if (max_order % 2 != 0 || max_order > modes.ladder_count()) {
    throw std::domain_error("moments: max order must be even and at most 2m");
  }
  MomentTable table(modes, max_order);
  const Mask limit = Mask{1} << modes.ladder_count();
  for (Mask mask = 1; mask < limit; ++mask) {
    if (std::popcount(mask) > max_order) continue;
    table.set(mask, symmetric_expectation(rho.matrix(), modes.value(), LadderIndexSet(mask)));
  }
  return table;
}

MomentTable moments(const DensityMatrix& rho) { return moments(rho, default_max_order(rho.modes())); }

GrassmannPoly characteristic_function(const MomentTable& table) {
  GrassmannPoly chi(table.modes().ladder_count());
  const Mask limit = Mask{1} << table.modes().ladder_count();
  for (Mask mask = 0; mask < limit; ++mask) {
    if (table.covers(mask)) chi.add(mask, table.at(mask));
  }
  return chi;
}

MomentTable moments_from_characteristic(const GrassmannPoly& chi, int max_order) {
  const ModeCount modes(chi.generator_count() / 2);
  MomentTable table(modes, max_order);
  for (const auto& [mask, c] : chi.terms()) {
    if (std::popcount(mask) <= max_order) table.set(mask, left_derivative(chi, LadderIndexSet(mask)));
  }
  table.set(0, chi.constant_term());
  return table;
}

CumulantTable cumulants_via_log(const GrassmannPoly& chi, int max_order) {
  if (chi.generator_count() % 2 != 0 || chi.generator_count() == 0) {
    throw std::domain_error("cumulants: characteristic function needs 2m generators");
  }
  const GrassmannPoly log_chi = poly_log(chi);
  CumulantTable table(ModeCount(chi.generator_count() / 2), max_order);
  table.set(0, 0.0);
  for (const auto& [mask, c] : log_chi.terms()) {
    if (mask != 0 && std::popcount(mask) <= max_order) table.set(mask, left_derivative(log_chi, LadderIndexSet(mask)));
  }
  return table;
}

CumulantTable cumulants_via_log(const GrassmannPoly& chi) {
  return cumulants_via_log(chi, chi.generator_count());
}

int block_concat_sign(std::span<const Mask> blocks) {
  int inversions = 0;
  Mask before = 0;
  for (Mask block : blocks) {
    for (Mask rest = block; rest != 0; rest &= rest - 1) {
      inversions += std::popcount(before >> (std::countr_zero(rest) + 1));
    }
    before |= block;
  }
  return (inversions & 1) ? -1 : 1;
}

namespace {

// Sum over set partitions of `target` weighted by (-1)^(l-1) (l-1)! sgn prod M.
// Summing the ordered-partition formula over the l! block orders leaves every
// order with the same sign when at most one block is odd, and cancels
// exactly when two or more blocks are odd.
cplx partition_sum(const MomentTable& table, Mask target) {
  cplx total = 0.0;
  std::vector<Mask> blocks;
  std::function<void(Mask, Mask, int, cplx)> recurse = [&](Mask remaining, Mask used, int odd_blocks,
                                                            cplx product) {
    if (remaining == 0) {
      const auto l = static_cast<int>(blocks.size());
      double weight = (l % 2 == 1) ? 1.0 : -1.0;
      for (int k = 2; k < l; ++k) weight *= k;
      total += weight * static_cast<double>(block_concat_sign(blocks)) * product;
      return;
    }
    const Mask lowest = remaining & (~remaining + 1);
    const Mask rest = remaining ^ lowest;
    // Iterate over all subsets of `rest` to join the lowest element.
    Mask sub = rest;
    while (true) {
      const Mask block = lowest | sub;
      const int odd = odd_blocks + (std::popcount(block) & 1);
      const cplx m = table.at(block);
      if (odd <= 1 && m != 0.0) {
        blocks.push_back(block);
        recurse(remaining ^ block, used | block, odd, product * m);
        blocks.pop_back();
      }
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
  };
  recurse(target, 0, 0, 1.0);
  return total;
}

}  // namespace

CumulantTable cumulants_via_partitions(const MomentTable& table, int max_order) {
  if (max_order > table.max_order()) throw std::domain_error("cumulants: moment table does not reach the order");
  CumulantTable out(table.modes(), max_order);
  out.set(0, 0.0);
  const Mask limit = Mask{1} << table.modes().ladder_count();
  for (Mask mask = 1; mask < limit; ++mask) {
    if (std::popcount(mask) <= max_order) out.set(mask, partition_sum(table, mask));
  }
  return out;
}

CumulantTable cumulants_via_partitions(const MomentTable& table) {
  return cumulants_via_partitions(table, table.max_order());
}

CovarianceMatrix covariance_from_moments(const MomentTable& table) {
  if (table.max_order() < 2) throw std::domain_error("covariance needs second-order moments");
  const int n = table.modes().ladder_count();
  CMatrix sigma = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const cplx v = table.at((Mask{1} << i) | (Mask{1} << j));
      sigma(i, j) = v;
      sigma(j, i) = -v;
    }
  }
  return CovarianceMatrix(std::move(sigma), table.modes());
}

namespace {

cplx pfaffian_rec(const CMatrix& a, std::vector<int>& idx) {
  if (idx.empty()) return 1.0;
  const int first = idx.front();
  cplx total = 0.0;
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const cplx entry = a(first, idx[k]);
    if (entry == 0.0) continue;
    std::vector<int> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t r = 1; r < idx.size(); ++r) {
      if (r != k) rest.push_back(idx[r]);
    }
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    total += sign * entry * pfaffian_rec(a, rest);
  }
  return total;
}

}  // namespace

cplx pfaffian(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::domain_error("pfaffian: non-square input");
  if (a.rows() > 0 && max_abs(a + a.transpose()) > 1e-9) throw std::domain_error("pfaffian: input is not antisymmetric");
  if (a.rows() % 2 != 0) return 0.0;
  std::vector<int> idx(static_cast<std::size_t>(a.rows()));
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
  return pfaffian_rec(a, idx);
}

cplx wick_predict(const CovarianceMatrix& sigma, LadderIndexSet set) {
  const auto idx = set.indices();
  if (idx.size() % 2 != 0) return 0.0;
  const auto n = static_cast<Eigen::Index>(idx.size());
  CMatrix sub(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = sigma.matrix()(idx[r] - 1, idx[c] - 1);
  }
  return pfaffian(sub);
}

}  // namespace fermag
