#pragma once

// Fermionic beam splitter and the convolution channel
//     rho_A [+]_eta rho_B = tr_B[ U_eta (rho_A (x) rho_B) U_eta^dag ]
// on a doubled register: A-modes occupy sites 1..m, B-modes sites m+1..2m.

#include <vector>

#include "fermag/fock.hpp"

namespace fermag {

/// Sequence of eta values applied step by step.
class ConvolutionSchedule {
 public:
  explicit ConvolutionSchedule(std::vector<double> etas);

  /// Schedule realizing the n-fold self-convolution: eta_k = 1 - 1/(k+2).
  static ConvolutionSchedule clt(int n);
  static ConvolutionSchedule bath(double eta, int steps);

  const std::vector<double>& etas() const { return etas_; }

 private:
  std::vector<double> etas_;
};

/// Ladder index of b_j-type operators on the doubled register.
int b_ladder_index(ModeCount m, int index);

OperatorMatrix beam_splitter(ModeCount m, double eta);
OperatorMatrix matchgate_generator(ModeCount m);

DensityMatrix convolve(const DensityMatrix& rho_a, const DensityMatrix& rho_b, double eta);
DensityMatrix self_convolve_n(const DensityMatrix& rho, int n);
/// Same as self_convolve_n but returns every intermediate rho^{[+]k}, k = 1..n.
std::vector<DensityMatrix> self_convolve_sequence(const DensityMatrix& rho, int n);

/// One step of the Gaussian-bath channel rho -> rho [+]_eta rho_G.
DensityMatrix bath_step(const DensityMatrix& rho, const DensityMatrix& rho_g, double eta);

}  // namespace fermag
