#include "fermag/convolution.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "fermag/gaussian.hpp"

namespace fermag {

namespace {

void require_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("eta " + std::to_string(eta) + " outside [0, 1]");
}

// K = sum_j (a_j b_j^dag + a_j^dag b_j), anti-Hermitian.
CMatrix hopping_generator(ModeCount m) {
  const int sites = 2 * m.value();
  const Eigen::Index d = m.doubled().dim();
  CMatrix k = CMatrix::Zero(d, d);
  for (int j = 1; j <= m.value(); ++j) {
    const CMatrix a_dag = ladder_op(sites, 2 * j - 1).matrix();
    const CMatrix a = ladder_op(sites, 2 * j).matrix();
    const CMatrix b_dag = ladder_op(sites, b_ladder_index(m, 2 * j - 1)).matrix();
    const CMatrix b = ladder_op(sites, b_ladder_index(m, 2 * j)).matrix();
    k += a * b_dag + a_dag * b;
  }
  return k;
}

// Spectral data of the Hermitian iK, computed once per mode count.
const EigenDecomposition& hopping_spectrum(ModeCount m) {
  static std::array<std::optional<EigenDecomposition>, kMaxStateModes + 1> cache;
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  auto& slot = cache[static_cast<std::size_t>(m.value())];
  if (!slot) {
    CMatrix h = cplx(0.0, 1.0) * hopping_generator(m);
    h = 0.5 * (h + h.adjoint());
    slot = hermitian_eig(h);
  }
  return *slot;
}

}  // namespace

ConvolutionSchedule::ConvolutionSchedule(std::vector<double> etas) : etas_(std::move(etas)) {
  for (double eta : etas_) require_eta(eta);
}

ConvolutionSchedule ConvolutionSchedule::clt(int n) {
  if (n < 1) throw std::domain_error("self-convolution order must be at least 1");
  std::vector<double> etas;
  for (int k = 0; k + 1 < n; ++k) etas.push_back(1.0 - 1.0 / (k + 2));
  return ConvolutionSchedule(std::move(etas));
}

ConvolutionSchedule ConvolutionSchedule::bath(double eta, int steps) {
  if (steps < 0) throw std::domain_error("bath schedule needs a non-negative step count");
  return ConvolutionSchedule(std::vector<double>(static_cast<std::size_t>(steps), eta));
}

int b_ladder_index(ModeCount m, int index) {
  if (index < 1 || index > m.ladder_count()) throw std::domain_error("ladder index out of range");
  return m.ladder_count() + index;
}

OperatorMatrix beam_splitter(ModeCount m, double eta) {
  require_eta(eta);
  const double theta = std::acos(std::sqrt(eta));
  if (theta == 0.0) return identity_operator(2 * m.value());
  // exp(-theta K) = exp(i theta (iK))
  const EigenDecomposition& spec = hopping_spectrum(m);
  const CVector phases = (cplx(0.0, theta) * spec.values.cast<cplx>()).array().exp();
  return OperatorMatrix(spec.vectors * phases.asDiagonal() * spec.vectors.adjoint());
}

OperatorMatrix matchgate_generator(ModeCount m) {
  // Lambda = i sum_j (a_j^dag b_j + a_j b_j^dag) = i K.
  return OperatorMatrix(cplx(0.0, 1.0) * hopping_generator(m));
}

DensityMatrix convolve(const DensityMatrix& rho_a, const DensityMatrix& rho_b, double eta) {
  if (!(rho_a.modes() == rho_b.modes())) throw std::domain_error("convolve: mode counts differ");
  require_eta(eta);
  const ModeCount m = rho_a.modes();
  if (2 * m.value() > kMaxSites) throw std::domain_error("convolve: doubled register too large");
  const CMatrix u = beam_splitter(m, eta).matrix();
  const CMatrix joint = tensor(OperatorMatrix(rho_a.matrix()), OperatorMatrix(rho_b.matrix())).matrix();
  const CMatrix evolved = u * joint * u.adjoint();
  CMatrix marginal = partial_trace_b(evolved, m.value());
  marginal = 0.5 * (marginal + marginal.adjoint());
  return DensityMatrix(std::move(marginal), m);
}

std::vector<DensityMatrix> self_convolve_sequence(const DensityMatrix& rho, int n) {
  const ConvolutionSchedule schedule = ConvolutionSchedule::clt(n);
  std::vector<DensityMatrix> out{rho};
  out.reserve(static_cast<std::size_t>(n));
  for (double eta : schedule.etas()) out.push_back(convolve(out.back(), rho, eta));
  return out;
}

DensityMatrix self_convolve_n(const DensityMatrix& rho, int n) {
  const ConvolutionSchedule schedule = ConvolutionSchedule::clt(n);
  DensityMatrix current = rho;
  for (double eta : schedule.etas()) current = convolve(current, rho, eta);
  return current;
}

DensityMatrix bath_step(const DensityMatrix& rho, const DensityMatrix& rho_g, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("bath_step: eta must lie in (0, 1]");
  const double drift = max_abs(covariance(rho).matrix() - covariance(rho_g).matrix());
  if (drift > 1e-8) throw std::domain_error("bath_step: bath covariance differs from the state's");
  return convolve(rho, rho_g, eta);
}

}  // namespace fermag
