#include "fermag/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace fermag {

namespace {

constexpr double kLambdaSlack = 1e-9;

// gamma = T * (a_1^dag, a_1, ..., a_m^dag, a_m)
CMatrix ladder_to_majorana(int m) {
  CMatrix t = CMatrix::Zero(2 * m, 2 * m);
  const cplx i(0.0, 1.0);
  for (int j = 0; j < m; ++j) {
    t(2 * j, 2 * j) = 1.0;
    t(2 * j, 2 * j + 1) = 1.0;
    t(2 * j + 1, 2 * j) = -i;
    t(2 * j + 1, 2 * j + 1) = i;
  }
  return t;
}

struct Block {
  Eigen::Index first;
  Eigen::Index second;
  double lambda;
};

}  // namespace

MajoranaCovariance::MajoranaCovariance(RMatrix entries, ModeCount modes) : entries_(std::move(entries)), modes_(modes) {
  const Eigen::Index n = modes.ladder_count();
  if (entries_.rows() != n || entries_.cols() != n) throw std::domain_error("majorana covariance has wrong dimension");
  if ((entries_ + entries_.transpose()).cwiseAbs().maxCoeff() > tol::kStructural) {
    throw std::domain_error("majorana covariance is not antisymmetric");
  }
}

CovarianceMatrix covariance(const DensityMatrix& rho) {
  const int m = rho.modes().value();
  const int n = 2 * m;
  CMatrix sigma = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const cplx v = symmetric_expectation(rho.matrix(), m, LadderIndexSet((Mask{1} << i) | (Mask{1} << j)));
      sigma(i, j) = v;
      sigma(j, i) = -v;
    }
  }
  return CovarianceMatrix(std::move(sigma), rho.modes());
}

MajoranaCovariance to_majorana(const CovarianceMatrix& sigma) {
  // tr(rho [gamma_k, gamma_l]) = 2 (T Sigma T^T)_kl, hence G = i T Sigma T^T.
  const CMatrix t = ladder_to_majorana(sigma.modes().value());
  const CMatrix g = cplx(0.0, 1.0) * t * sigma.matrix() * t.transpose();
  if (g.imag().cwiseAbs().maxCoeff() > tol::kStructural) {
    throw InvariantViolation("majorana covariance is not real");
  }
  return MajoranaCovariance(g.real(), sigma.modes());
}

CovarianceMatrix from_majorana(const MajoranaCovariance& g) {
  const CMatrix t_inv = ladder_to_majorana(g.modes().value()).inverse();
  const CMatrix sigma = cplx(0.0, -1.0) * t_inv * g.matrix().cast<cplx>() * t_inv.transpose();
  return CovarianceMatrix(sigma, g.modes());
}

OperatorMatrix majorana_op(int sites, int index) {
  if (index < 1 || index > 2 * sites) throw std::domain_error("majorana index out of range");
  const int mode = (index + 1) / 2;
  const CMatrix create = ladder_op(sites, 2 * mode - 1).matrix();
  const CMatrix annihilate = ladder_op(sites, 2 * mode).matrix();
  if (index % 2 == 1) return OperatorMatrix(annihilate + create);
  return OperatorMatrix(cplx(0.0, 1.0) * (annihilate - create));
}

RMatrix normal_form_matrix(const RVector& lambdas) {
  const Eigen::Index m = lambdas.size();
  RMatrix b = RMatrix::Zero(2 * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    b(2 * j, 2 * j + 1) = lambdas[j];
    b(2 * j + 1, 2 * j) = -lambdas[j];
  }
  return b;
}

NormalForm normal_form(const MajoranaCovariance& g) {
  const Eigen::Index n = g.matrix().rows();
  const Eigen::Index m = n / 2;
  const RMatrix a = 0.5 * (g.matrix() - g.matrix().transpose());
  Eigen::RealSchur<RMatrix> schur(a);
  const RMatrix t = schur.matrixT();
  const RMatrix u = schur.matrixU();

  // An orthogonal similarity keeps `a` antisymmetric, so the quasi-triangular
  // factor is block diagonal: 2x2 blocks [[0, mu], [-mu, 0]] plus 1x1 zeros.
  std::vector<Block> blocks;
  std::vector<Eigen::Index> zeros;
  for (Eigen::Index i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      blocks.push_back({i, i + 1, 0.5 * (t(i, i + 1) - t(i + 1, i))});
      i += 2;
    } else {
      zeros.push_back(i);
      i += 1;
    }
  }
  for (std::size_t k = 0; k + 1 < zeros.size(); k += 2) blocks.push_back({zeros[k], zeros[k + 1], 0.0});

  std::vector<std::pair<RVector, RVector>> vecs;
  for (auto& blk : blocks) {
    RVector v1 = u.col(blk.first);
    RVector v2 = u.col(blk.second);
    if (blk.lambda < 0.0) {
      std::swap(v1, v2);
      blk.lambda = -blk.lambda;
    }
    // Deterministic orientation: first significant component of v1 positive.
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(v1[r]) > 1e-12) {
        if (v1[r] < 0.0) {
          v1 = -v1;
          v2 = -v2;
        }
        break;
      }
    }
    vecs.emplace_back(v1, v2);
  }

  std::vector<std::size_t> order(blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return blocks[x].lambda > blocks[y].lambda; });

  NormalForm form{RMatrix(n, n), RVector(m)};
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto k = order[static_cast<std::size_t>(j)];
    form.rotation.col(2 * j) = vecs[k].first;
    form.rotation.col(2 * j + 1) = vecs[k].second;
    form.lambdas[j] = blocks[k].lambda;
  }
  if (form.rotation.determinant() < 0.0) {
    form.rotation.col(n - 1) = -form.rotation.col(n - 1);
    form.lambdas[m - 1] = -form.lambdas[m - 1];
  }
  return form;
}

RMatrix real_log_orthogonal(const RMatrix& o) {
  const Eigen::Index n = o.rows();
  Eigen::RealSchur<RMatrix> schur(o);
  const RMatrix t = schur.matrixT();
  const RMatrix u = schur.matrixU();
  RMatrix l = RMatrix::Zero(n, n);
  std::vector<Eigen::Index> minus_one;
  for (Eigen::Index i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double c = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double s = 0.5 * (t(i, i + 1) - t(i + 1, i));
      const double theta = std::atan2(s, c);
      l(i, i + 1) = theta;
      l(i + 1, i) = -theta;
      i += 2;
    } else {
      if (t(i, i) < 0.0) minus_one.push_back(i);
      i += 1;
    }
  }
  if (minus_one.size() % 2 != 0) throw std::domain_error("real_log_orthogonal: determinant is not +1");
  for (std::size_t k = 0; k < minus_one.size(); k += 2) {
    l(minus_one[k], minus_one[k + 1]) = std::numbers::pi;
    l(minus_one[k + 1], minus_one[k]) = -std::numbers::pi;
  }
  RMatrix h = u * l * u.transpose();
  return 0.5 * (h - h.transpose());
}

OperatorMatrix majorana_rotation(const RMatrix& o) {
  const auto n = static_cast<int>(o.rows());
  const int m = n / 2;
  const RMatrix h = real_log_orthogonal(o);
  std::vector<CMatrix> gammas;
  for (int k = 1; k <= n; ++k) gammas.push_back(majorana_op(m, k).matrix());
  const Eigen::Index d = Eigen::Index{1} << m;
  // Q = (1/4) sum_jk h_jk gamma_j gamma_k satisfies [Q, gamma_l] = sum_j h_jl gamma_j.
  CMatrix q = CMatrix::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (h(j, k) != 0.0) q += 0.5 * h(j, k) * gammas[j] * gammas[k];
    }
  }
  return matrix_exp(OperatorMatrix(q));
}

DensityMatrix gaussian_state(const NormalForm& form) {
  const auto m = static_cast<int>(form.lambdas.size());
  const ModeCount modes(m);
  const Eigen::Index d = modes.dim();
  CMatrix rho0 = CMatrix::Identity(d, d);
  for (int j = 0; j < m; ++j) {
    double lambda = form.lambdas[j];
    if (std::abs(lambda) > 1.0 + kLambdaSlack) throw std::domain_error("gaussian_state: |lambda| exceeds 1");
    lambda = std::clamp(lambda, -1.0, 1.0);
    const CMatrix pair = cplx(0.0, 1.0) * majorana_op(m, 2 * j + 1).matrix() * majorana_op(m, 2 * j + 2).matrix();
    rho0 = rho0 * (0.5 * (CMatrix::Identity(d, d) + lambda * pair));
  }
  const CMatrix r = majorana_rotation(form.rotation).matrix();
  CMatrix rho = r * rho0 * r.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho), modes);
}

DensityMatrix gaussify(const DensityMatrix& rho) {
  const NormalForm form = normal_form(to_majorana(covariance(rho)));
  if (form.lambdas.cwiseAbs().maxCoeff() > 1.0 + kLambdaSlack) {
    throw std::domain_error("gaussify: covariance is unphysical");
  }
  return gaussian_state(form);
}

double gaussian_entropy(std::span<const double> lambdas) {
  double s = 0.0;
  for (double lambda : lambdas) {
    lambda = std::abs(lambda);
    if (lambda > 1.0 + kLambdaSlack) throw std::domain_error("gaussian_entropy: |lambda| exceeds 1");
    lambda = std::min(lambda, 1.0);
    for (double p : {0.5 * (1.0 + lambda), 0.5 * (1.0 - lambda)}) {
      if (p > 0.0) s -= p * std::log(p);
    }
  }
  return s;
}

double gaussian_entropy(const RVector& lambdas) {
  return gaussian_entropy(std::span<const double>(lambdas.data(), static_cast<std::size_t>(lambdas.size())));
}

double relative_entropy_to_gaussian(const DensityMatrix& rho) {
  return von_neumann_entropy(gaussify(rho)) - von_neumann_entropy(rho);
}

}  // namespace fermag
