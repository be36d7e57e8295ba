#include "fermag/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fermag {

namespace {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_dim(Eigen::Index n) { return std::countr_zero(static_cast<std::uint64_t>(n)); }

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) throw std::domain_error(std::string(what) + ": non-finite entries");
}

double hermiticity_defect(const CMatrix& a) { return max_abs(a - a.adjoint()); }

// Position of site n (1-based) inside a basis index of a k-site register.
inline int site_bit(int sites, int n) { return sites - n; }

// Number of occupied sites strictly before site n.
inline int occupied_before(std::uint32_t basis, int sites, int n) {
  return std::popcount(basis >> (site_bit(sites, n) + 1));
}

}  // namespace

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

ModeCount::ModeCount(int m) : m_(m) {
  if (m < 1 || m > kMaxSites) {
    throw std::domain_error("mode count " + std::to_string(m) + " outside [1, " +
                            std::to_string(kMaxSites) + "]");
  }
}

LadderIndexSet::LadderIndexSet(std::initializer_list<int> indices) {
  for (int j : indices) {
    if (j < 1 || j > 2 * kMaxSites) throw std::domain_error("ladder index out of range");
    mask_ |= Mask{1} << (j - 1);
  }
}

int LadderIndexSet::size() const { return std::popcount(mask_); }

bool LadderIndexSet::contains(int index) const {
  return index >= 1 && index <= 32 && ((mask_ >> (index - 1)) & 1u) != 0;
}

std::vector<int> LadderIndexSet::indices() const {
  std::vector<int> out;
  for (Mask rest = mask_; rest != 0; rest &= rest - 1) out.push_back(std::countr_zero(rest) + 1);
  return out;
}

OperatorMatrix::OperatorMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || !is_power_of_two(entries_.rows())) {
    throw std::domain_error("operator matrix must be square with power-of-two dimension");
  }
  sites_ = log2_dim(entries_.rows());
}

PureState::PureState(CVector amplitudes, ModeCount modes)
    : amplitudes_(std::move(amplitudes)), modes_(modes) {
  if (amplitudes_.size() != modes_.dim()) throw std::domain_error("amplitude vector has wrong dimension");
  if (std::abs(amplitudes_.norm() - 1.0) > tol::kUnitNorm) {
    throw std::domain_error("pure state is not normalized");
  }
  for (Eigen::Index b = 0; b < amplitudes_.size(); ++b) {
    if ((std::popcount(static_cast<std::uint64_t>(b)) & 1) && std::abs(amplitudes_[b]) > tol::kUnitNorm) {
      throw std::domain_error("pure state has weight on the odd-parity sector");
    }
  }
}

DensityMatrix::DensityMatrix(CMatrix entries, ModeCount modes) : entries_(std::move(entries)), modes_(modes) {
  const Eigen::Index d = modes_.dim();
  if (entries_.rows() != d || entries_.cols() != d) throw std::domain_error("density matrix has wrong dimension");
  require_finite(entries_, "density matrix");
  if (hermiticity_defect(entries_) > tol::kStructural) throw InvariantViolation("density matrix is not Hermitian");
  if (std::abs(entries_.trace() - 1.0) > tol::kStructural) throw InvariantViolation("density matrix trace is not 1");
  // Even-parity commutation: P is diagonal, so [rho, P] vanishes iff every
  // entry coupling opposite-parity basis states vanishes.
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const bool mixed_parity = (std::popcount(static_cast<std::uint64_t>(i ^ j)) & 1) != 0;
      if (mixed_parity && 2.0 * std::abs(entries_(i, j)) > tol::kStructural) {
        throw InvariantViolation("density matrix does not commute with parity");
      }
    }
  }
  const CMatrix symmetric = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol::kPositivity) {
    throw InvariantViolation("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.modes());
}

DensityMatrix DensityMatrix::maximally_mixed(ModeCount modes) {
  const Eigen::Index d = modes.dim();
  return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d), modes);
}

OperatorMatrix ladder_op(int sites, int index) {
  ModeCount check(sites);
  if (index < 1 || index > 2 * sites) {
    throw std::domain_error("ladder index " + std::to_string(index) + " outside [1, " +
                            std::to_string(2 * sites) + "]");
  }
  const int mode = (index + 1) / 2;
  const bool creation = (index % 2) == 1;
  const Eigen::Index d = check.dim();
  const std::uint32_t bit = std::uint32_t{1} << site_bit(sites, mode);
  CMatrix out = CMatrix::Zero(d, d);
  for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(d); ++b) {
    const bool occupied = (b & bit) != 0;
    if (occupied == creation) continue;
    const double sign = (occupied_before(b, sites, mode) & 1) ? -1.0 : 1.0;
    out(b ^ bit, b) = sign;
  }
  return OperatorMatrix(std::move(out));
}

MonomialAction symmetric_product_action(int sites, LadderIndexSet set) {
  ModeCount check(sites);
  if (set.empty()) throw std::domain_error("symmetric product of the empty set");
  if (set.mask() >> (2 * sites) != 0) throw std::domain_error("ladder set exceeds register");
  const auto idx = set.indices();
  const auto d = static_cast<std::uint32_t>(check.dim());
  MonomialAction action{std::vector<std::uint32_t>(d), std::vector<double>(d, 0.0)};
  for (std::uint32_t b0 = 0; b0 < d; ++b0) {
    std::uint32_t b = b0;
    double coeff = 1.0;
    // Rightmost factor acts first.
    for (int k = static_cast<int>(idx.size()) - 1; k >= 0 && coeff != 0.0; --k) {
      const int j = idx[k];
      const int mode = (j + 1) / 2;
      const std::uint32_t bit = std::uint32_t{1} << site_bit(sites, mode);
      const bool occupied = (b & bit) != 0;
      if (j % 2 == 0 && k > 0 && idx[k - 1] == j - 1) {
        coeff *= occupied ? 0.5 : -0.5;
        --k;
        continue;
      }
      const bool creation = (j % 2) == 1;
      if (occupied == creation) {
        coeff = 0.0;
        break;
      }
      if (occupied_before(b, sites, mode) & 1) coeff = -coeff;
      b ^= bit;
    }
    action.target[b0] = b;
    action.coeff[b0] = coeff;
  }
  return action;
}

OperatorMatrix symmetric_product(int sites, LadderIndexSet set) {
  const auto action = symmetric_product_action(sites, set);
  const auto d = static_cast<Eigen::Index>(action.target.size());
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    if (action.coeff[b] != 0.0) out(action.target[b], b) = action.coeff[b];
  }
  return OperatorMatrix(std::move(out));
}

cplx symmetric_expectation(const CMatrix& rho, int sites, LadderIndexSet set) {
  const auto action = symmetric_product_action(sites, set);
  if (rho.rows() != static_cast<Eigen::Index>(action.target.size())) {
    throw std::domain_error("state dimension does not match register");
  }
  // tr(rho A) = sum_b rho(b, target(b)) * coeff(b)
  cplx sum = 0.0;
  for (std::size_t b = 0; b < action.target.size(); ++b) {
    if (action.coeff[b] != 0.0) sum += rho(static_cast<Eigen::Index>(b), action.target[b]) * action.coeff[b];
  }
  return sum;
}

OperatorMatrix parity_operator(int sites) {
  const Eigen::Index d = ModeCount(sites).dim();
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) out(b, b) = (std::popcount(static_cast<std::uint64_t>(b)) & 1) ? -1.0 : 1.0;
  return OperatorMatrix(std::move(out));
}

OperatorMatrix identity_operator(int sites) {
  const Eigen::Index d = ModeCount(sites).dim();
  return OperatorMatrix(CMatrix::Identity(d, d));
}

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.sites() + b.sites() > kMaxSites) throw std::domain_error("tensor product exceeds register limit");
  return OperatorMatrix(kron(a.matrix(), b.matrix()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const ModeCount total(a.modes().value() + b.modes().value());
  return DensityMatrix(kron(a.matrix(), b.matrix()), total);
}

CMatrix partial_trace_b(const CMatrix& rho_ab, int m) {
  const Eigen::Index d = Eigen::Index{1} << m;
  if (rho_ab.rows() != d * d || rho_ab.cols() != d * d) {
    throw std::domain_error("partial trace: register is not a doubled " + std::to_string(m) + "-mode system");
  }
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      out(i, j) = rho_ab.block(i * d, j * d, d, d).trace();
    }
  }
  return out;
}

DensityMatrix partial_trace_b(const DensityMatrix& rho_ab, ModeCount m) {
  if (rho_ab.modes().value() != 2 * m.value()) throw std::domain_error("partial trace: mode mismatch");
  return DensityMatrix(partial_trace_b(rho_ab.matrix(), m.value()), m);
}

CMatrix matrix_exp(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::domain_error("matrix_exp: non-square input");
  require_finite(a, "matrix_exp");
  const Eigen::Index d = a.rows();
  if (d == 0) return a;
  const double scale = std::max(1.0, max_abs(a));
  if (hermiticity_defect(a) <= 1e-14 * scale) {
    const auto eig = hermitian_eig(0.5 * (a + a.adjoint()));
    const CVector w = eig.values.array().exp().cast<cplx>();
    return eig.vectors * w.asDiagonal() * eig.vectors.adjoint();
  }
  if (max_abs(a + a.adjoint()) <= 1e-14 * scale) {
    // a = -i H with H Hermitian.
    const CMatrix h = cplx(0.0, 0.5) * (a - a.adjoint());
    const auto eig = hermitian_eig(h);
    CVector w(d);
    for (Eigen::Index k = 0; k < d; ++k) w[k] = std::polar(1.0, -eig.values[k]);
    return eig.vectors * w.asDiagonal() * eig.vectors.adjoint();
  }
  // Scaling and squaring with a degree-18 Taylor polynomial (Horner form).
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMatrix scaled = a / std::ldexp(1.0, squarings);
  CMatrix result = CMatrix::Identity(d, d);
  for (int k = 18; k >= 1; --k) {
    result = CMatrix::Identity(d, d) + scaled * result / static_cast<double>(k);
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

OperatorMatrix matrix_exp(const OperatorMatrix& a) { return OperatorMatrix(matrix_exp(a.matrix())); }

EigenDecomposition hermitian_eig(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::domain_error("hermitian_eig: non-square input");
  if (hermiticity_defect(a) > tol::kHermitianInput) throw std::domain_error("hermitian_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (a + a.adjoint()));
  if (solver.info() != Eigen::Success) throw std::domain_error("hermitian_eig: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.matrix().rows() != sigma.matrix().rows()) throw std::domain_error("trace_distance: dimension mismatch");
  const CMatrix diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

namespace {

double entropy_of_spectrum(const RVector& values) {
  double s = 0.0;
  for (double p : values) {
    if (p < -tol::kEntropyClamp || p > 1.0 + tol::kEntropyClamp) {
      throw std::domain_error("entropy: eigenvalue outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(solver.eigenvalues());
}

double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.matrix().rows() != sigma.matrix().rows()) throw std::domain_error("relative_entropy: dimension mismatch");
  const auto er = hermitian_eig(rho.matrix());
  const auto es = hermitian_eig(sigma.matrix());
  // tr(rho log sigma) = sum_{i,k} p_i |<r_i|s_k>|^2 log q_k
  const RMatrix overlap = (er.vectors.adjoint() * es.vectors).cwiseAbs2();
  double cross = 0.0;
  for (Eigen::Index i = 0; i < er.values.size(); ++i) {
    const double p = er.values[i];
    if (p <= 1e-14) continue;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
      const double w = p * overlap(i, k);
      if (es.values[k] < 1e-12) {
        if (w > 1e-10) return std::numeric_limits<double>::infinity();
        continue;
      }
      cross += w * std::log(es.values[k]);
    }
  }
  return -entropy_of_spectrum(er.values) - cross;
}

}  // namespace fermag
