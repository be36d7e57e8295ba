#pragma once

// Dense Jordan-Wigner representation of fermionic modes.
//
// Basis convention: a register of k sites has dimension 2^k and site 1 is
// the most significant bit of the basis index. Ladder operators follow
//     a_n = (prod_{k<n} Z_k) sigma^-_n,   Z = diag(1, -1),
// and the ladder vector is ordered (a_1^dag, a_1, ..., a_m^dag, a_m), so
// ladder index 2n-1 is a_n^dag and 2n is a_n (1-based).

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "fermag/errors.hpp"

namespace fermag {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Mask = std::uint32_t;

/// Largest mode count accepted for a physical state.
inline constexpr int kMaxStateModes = 6;
/// Largest Jordan-Wigner register (a doubled 6-mode system).
inline constexpr int kMaxSites = 2 * kMaxStateModes;

namespace tol {
inline constexpr double kStructural = 1e-10;
inline constexpr double kUnitNorm = 1e-12;
inline constexpr double kPositivity = 1e-9;
inline constexpr double kHermitianInput = 1e-8;
inline constexpr double kEntropyClamp = 1e-9;
}  // namespace tol

class ModeCount {
 public:
  explicit ModeCount(int m);

  int value() const { return m_; }
  int ladder_count() const { return 2 * m_; }
  Eigen::Index dim() const { return Eigen::Index{1} << m_; }
  ModeCount doubled() const { return ModeCount(2 * m_); }

  friend bool operator==(ModeCount, ModeCount) = default;

 private:
  int m_;
};

/// Subset of the ladder indices [2m], stored as a bitmask (bit j-1 <-> index j).
class LadderIndexSet {
 public:
  LadderIndexSet() = default;
  explicit LadderIndexSet(Mask mask) : mask_(mask) {}
  LadderIndexSet(std::initializer_list<int> indices);

  Mask mask() const { return mask_; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(int index) const;
  /// Elements in strictly increasing order (1-based).
  std::vector<int> indices() const;

  friend bool operator==(LadderIndexSet, LadderIndexSet) = default;

 private:
  Mask mask_ = 0;
};

class OperatorMatrix {
 public:
  explicit OperatorMatrix(CMatrix entries);

  const CMatrix& matrix() const { return entries_; }
  int sites() const { return sites_; }

 private:
  CMatrix entries_;
  int sites_;
};

class PureState {
 public:
  PureState(CVector amplitudes, ModeCount modes);

  const CVector& amplitudes() const { return amplitudes_; }
  ModeCount modes() const { return modes_; }

 private:
  CVector amplitudes_;
  ModeCount modes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace, positivity and parity commutation.
  DensityMatrix(CMatrix entries, ModeCount modes);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(ModeCount modes);

  const CMatrix& matrix() const { return entries_; }
  ModeCount modes() const { return modes_; }

 private:
  CMatrix entries_;
  ModeCount modes_;
};

struct EigenDecomposition {
  RVector values;  // ascending
  CMatrix vectors;
};

/// Action of a monomial operator on the computational basis: basis state b
/// is mapped to coeff[b] * |target[b]>. Every symmetric product of ladder
/// operators has this form.
struct MonomialAction {
  std::vector<std::uint32_t> target;
  std::vector<double> coeff;
};

OperatorMatrix ladder_op(int sites, int index);
OperatorMatrix symmetric_product(int sites, LadderIndexSet set);
MonomialAction symmetric_product_action(int sites, LadderIndexSet set);
/// tr(rho * a^J) without materializing a^J.
cplx symmetric_expectation(const CMatrix& rho, int sites, LadderIndexSet set);

OperatorMatrix parity_operator(int sites);
OperatorMatrix identity_operator(int sites);

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Traces out the trailing m sites of a 2m-site register.
CMatrix partial_trace_b(const CMatrix& rho_ab, int m);
DensityMatrix partial_trace_b(const DensityMatrix& rho_ab, ModeCount m);

OperatorMatrix matrix_exp(const OperatorMatrix& a);
CMatrix matrix_exp(const CMatrix& a);

EigenDecomposition hermitian_eig(const CMatrix& a);
inline EigenDecomposition hermitian_eig(const OperatorMatrix& a) { return hermitian_eig(a.matrix()); }

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double von_neumann_entropy(const DensityMatrix& rho);
double purity(const DensityMatrix& rho);

/// S(rho || sigma) in nats; +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

double max_abs(const CMatrix& a);

}  // namespace fermag
