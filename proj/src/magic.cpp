#include "fermag/magic.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "fermag/convolution.hpp"
#include "fermag/gaussian.hpp"
#include "fermag/grassmann.hpp"

namespace fermag {

namespace {

CVector doubled_copy(const PureState& psi) {
  const CVector& v = psi.amplitudes();
  CVector out(v.size() * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out.segment(i * v.size(), v.size()) = v[i] * v;
  return out;
}

int wick_order_cap(ModeCount m) { return m.value() <= 4 ? m.ladder_count() : 6; }

}  // namespace

double matchgate_violation_dense(const PureState& psi) {
  const CVector pair = doubled_copy(psi);
  return (matchgate_generator(psi.modes()).matrix() * pair).squaredNorm();
}

double matchgate_violation_covariance(const CovarianceMatrix& sigma) {
  return 0.5 * sigma.modes().value() - sigma.matrix().squaredNorm();
}

double matchgate_violation_curvature(const PureState& psi, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("curvature: dt must be positive");
  const CVector pair = doubled_copy(psi);
  const CMatrix lambda = matchgate_generator(psi.modes()).matrix();
  auto deviation = [&](double t) {
    const CMatrix u = matrix_exp(CMatrix(cplx(0.0, t) * lambda));
    return (u * pair - pair).squaredNorm();
  };
  // f(0) = 0 exactly.
  const double second = (deviation(dt) + deviation(-dt)) / (dt * dt);
  return 0.5 * second;
}

std::map<int, double> wick_violation(const DensityMatrix& rho, int max_order) {
  if (max_order < 4) throw std::domain_error("wick_violation: max order must be at least 4");
  const MomentTable table = moments(rho, max_order);
  const CumulantTable cumulants = cumulants_via_log(characteristic_function(table), max_order);
  std::map<int, double> out;
  for (int k = 4; k <= max_order; k += 2) {
    double sum = 0.0;
    for (Mask mask : cumulants.masks_of_order(k)) sum += std::norm(cumulants.at(mask));
    out[k] = sum;
  }
  return out;
}

std::map<int, double> wick_deviation(const DensityMatrix& rho, int max_order) {
  if (max_order < 4) throw std::domain_error("wick_deviation: max order must be at least 4");
  const MomentTable table = moments(rho, max_order);
  const CovarianceMatrix sigma = covariance_from_moments(table);
  std::map<int, double> out;
  for (int k = 4; k <= max_order; k += 2) {
    double sum = 0.0;
    for (Mask mask : table.masks_of_order(k)) {
      sum += std::norm(table.at(mask) - wick_predict(sigma, LadderIndexSet(mask)));
    }
    out[k] = sum;
  }
  return out;
}

OperatorMatrix swap_operator(ModeCount m) {
  const int sites = 2 * m.value();
  const Eigen::Index d = m.doubled().dim();
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix out = id;
  for (int i = 1; i <= m.value(); ++i) {
    const CMatrix a_dag = ladder_op(sites, 2 * i - 1).matrix();
    const CMatrix a = ladder_op(sites, 2 * i).matrix();
    const CMatrix b_dag = ladder_op(sites, b_ladder_index(m, 2 * i - 1)).matrix();
    const CMatrix b = ladder_op(sites, b_ladder_index(m, 2 * i)).matrix();
    const CMatrix n_a = a_dag * a - 0.5 * id;
    const CMatrix n_b = b_dag * b - 0.5 * id;
    const CMatrix factor = 0.5 * id + a_dag * b + a * b_dag + 2.0 * n_a * n_b;
    out = out * factor;
  }
  return OperatorMatrix(std::move(out));
}

double swap_overlap_dense(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.modes() == sigma.modes())) throw std::domain_error("swap overlap: mode counts differ");
  const CMatrix joint = tensor(OperatorMatrix(rho.matrix()), OperatorMatrix(sigma.matrix())).matrix();
  return (swap_operator(rho.modes()).matrix() * joint).trace().real();
}

std::vector<double> swap_delta(ModeCount m) {
  // Per mode the SWAP factor is one of
  //   (1/2) I,  a^dag b,  a b^dag,  2 {a^dag a}{b^dag b}.
  // Choosing one term per mode yields (A_1 B_1)...(A_m B_m). Moving every
  // A-factor left past the B-factors of earlier modes gives a^K b^L with L
  // the per-mode adjoint pattern of K, and tr(rho (x) rho a^K b^L) = M_K M_L.
  // Finally a^L = (-1)^{s(s-1)/2} (a^K)^dag for s single-operator modes, so
  // M_L = (-1)^{s(s-1)/2} conj(M_K).
  const int n = m.ladder_count();
  std::vector<double> delta(std::size_t{1} << n, 0.0);
  for (Mask k = 0; k < delta.size(); ++k) {
    double coeff = 1.0;
    int singles = 0;
    int swaps = 0;
    int b_parity_so_far = 0;
    for (int i = 0; i < m.value(); ++i) {
      const bool creates = (k >> (2 * i)) & 1u;
      const bool annihilates = (k >> (2 * i + 1)) & 1u;
      int a_count = 0;
      int b_count = 0;
      if (creates && annihilates) {
        coeff *= 2.0;
        a_count = b_count = 2;
      } else if (creates) {
        a_count = b_count = 1;  // a^dag b
      } else if (annihilates) {
        a_count = b_count = 1;  // a b^dag
      } else {
        coeff *= 0.5;
      }
      if (a_count == 1) ++singles;
      swaps += b_parity_so_far * a_count;
      b_parity_so_far += b_count;
    }
    if (swaps & 1) coeff = -coeff;
    if ((singles * (singles - 1) / 2) & 1) coeff = -coeff;
    delta[k] = coeff;
  }
  return delta;
}

double swap_purity_formula(const MomentTable& table, const std::vector<double>& delta) {
  double sum = 0.0;
  for (Mask k = 0; k < delta.size(); ++k) {
    if (table.covers(k)) sum += delta[k] * std::norm(table.at(k));
  }
  return sum;
}

double swap_convolution_formula(const MomentTable& table, const std::vector<double>& delta) {
  double sum = 0.0;
  for (Mask k = 0; k < delta.size(); ++k) {
    if (table.covers(k)) sum += delta[k] * std::pow(2.0, 1.0 - 0.5 * std::popcount(k)) * std::norm(table.at(k));
  }
  return sum;
}

double swap_magic_measure(const DensityMatrix& rho) {
  return std::abs(1.0 - swap_overlap_dense(rho, self_convolve_n(rho, 2)));
}

MagicReport magic_report(const PureState& psi, std::optional<std::uint64_t> seed) {
  const DensityMatrix rho = DensityMatrix::from_pure(psi);
  const CovarianceMatrix sigma = covariance(rho);
  MagicReport report;
  report.entropy_of_gaussification = gaussian_entropy(normal_form(to_majorana(sigma)).lambdas);
  report.matchgate_violation = matchgate_violation_dense(psi);
  report.matchgate_violation_covariance = matchgate_violation_covariance(sigma);
  if (psi.modes().value() >= 2) {
    report.wick_violation_by_order = wick_violation(rho, wick_order_cap(psi.modes()));
  }
  report.swap_deficit = swap_magic_measure(rho);
  report.provenance.modes = psi.modes().value();
  report.provenance.seed = seed;
  report.provenance.prune_threshold = kGrassmannPrune;
  return report;
}

}  // namespace fermag
