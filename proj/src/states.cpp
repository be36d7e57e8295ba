#include "fermag/states.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fermag {

namespace {

CMatrix random_complex(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = scale * cplx(re, im);
    }
  }
  return out;
}

void random_couplings(std::mt19937_64& rng, ModeCount m, CMatrix& h, CMatrix& g) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(m.value()));
  const CMatrix x = random_complex(rng, m.value(), m.value(), scale);
  const CMatrix y = random_complex(rng, m.value(), m.value(), scale);
  h = 0.5 * (x + x.adjoint());
  g = 0.5 * (y - y.transpose());
}

CVector even_normal_vector(std::mt19937_64& rng, ModeCount m) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v = CVector::Zero(m.dim());
  for (Eigen::Index b = 0; b < v.size(); ++b) {
    if (std::popcount(static_cast<std::uint64_t>(b)) & 1) continue;
    const double re = normal(rng);
    const double im = normal(rng);
    v[b] = cplx(re, im);
  }
  return v / v.norm();
}

}  // namespace

PureState vacuum(ModeCount m) {
  CVector v = CVector::Zero(m.dim());
  v[0] = 1.0;
  return PureState(std::move(v), m);
}

PureState reference_magic_state() {
  const ModeCount m(3);
  CVector v = CVector::Zero(m.dim());
  for (int b : {0b000, 0b011, 0b101, 0b110}) v[b] = 0.5;
  return PureState(std::move(v), m);
}

CMatrix quadratic_hamiltonian(ModeCount m, const CMatrix& h, const CMatrix& g) {
  const int n = m.value();
  if (h.rows() != n || h.cols() != n || g.rows() != n || g.cols() != n) {
    throw std::domain_error("quadratic hamiltonian: coupling matrices must be m x m");
  }
  const Eigen::Index d = m.dim();
  std::vector<CMatrix> create;
  std::vector<CMatrix> annihilate;
  for (int j = 1; j <= n; ++j) {
    create.push_back(ladder_op(n, 2 * j - 1).matrix());
    annihilate.push_back(ladder_op(n, 2 * j).matrix());
  }
  CMatrix out = CMatrix::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      out += h(j, k) * create[j] * annihilate[k];
      const CMatrix pair = g(j, k) * create[j] * create[k];
      out += pair + pair.adjoint();
    }
  }
  return 0.5 * (out + out.adjoint());
}

PureState gaussian_pure_from_quadratic(ModeCount m, const CMatrix& h, const CMatrix& g) {
  const CMatrix ham = quadratic_hamiltonian(m, h, g);
  const CMatrix u = matrix_exp(CMatrix(cplx(0.0, 1.0) * ham));
  CVector v = u.col(0);
  v /= v.norm();
  // Quadratic evolution preserves parity; clear roundoff on the odd sector.
  for (Eigen::Index b = 0; b < v.size(); ++b) {
    if (std::popcount(static_cast<std::uint64_t>(b)) & 1) v[b] = 0.0;
  }
  return PureState(v / v.norm(), m);
}

PureState random_even_pure(ModeCount m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return PureState(even_normal_vector(rng, m), m);
}

PureState random_gaussian_pure(ModeCount m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CMatrix h;
  CMatrix g;
  random_couplings(rng, m, h, g);
  return gaussian_pure_from_quadratic(m, h, g);
}

DensityMatrix random_gaussian_mixed(ModeCount m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CMatrix h;
  CMatrix g;
  random_couplings(rng, m, h, g);
  const auto eig = hermitian_eig(quadratic_hamiltonian(m, h, g));
  // Shift by the ground energy before exponentiating.
  const RVector weights = (-(eig.values.array() - eig.values.minCoeff())).exp();
  CMatrix rho = eig.vectors * (weights / weights.sum()).cast<cplx>().asDiagonal() * eig.vectors.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho), m);
}

DensityMatrix random_even_mixed(ModeCount m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.1, 1.0);
  const Eigen::Index d = m.dim();
  CMatrix rho = CMatrix::Zero(d, d);
  double total = 0.0;
  const int components = static_cast<int>(d / 2) + 1;
  for (int k = 0; k < components; ++k) {
    const CVector v = even_normal_vector(rng, m);
    const double w = uniform(rng);
    rho += w * v * v.adjoint();
    total += w;
  }
  rho /= total;
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho), m);
}

}  // namespace fermag
