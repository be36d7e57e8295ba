#pragma once

// Non-Gaussian magic measures for even fermionic states: entropy of the
// Gaussification, matchgate-identity violation, Wick/cumulant violation and
// the SWAP test against the self-convolution.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fermag/charfn.hpp"
#include "fermag/fock.hpp"

namespace fermag {

/// ||Lambda (|psi> (x) |psi>)||_2^2 on the doubled register.
double matchgate_violation_dense(const PureState& psi);
/// m/2 - ||Sigma||_2^2 (squared Schatten-2 norm, each pair counted twice).
double matchgate_violation_covariance(const CovarianceMatrix& sigma);
/// Half the central second difference at t = 0 of
/// f(t) = ||(exp(i t Lambda) - I)(|psi> (x) |psi>)||_2^2.
double matchgate_violation_curvature(const PureState& psi, double dt = 1e-3);

/// order k -> sum_{|J| = k} |C_J|^2 for even k in [4, max_order].
std::map<int, double> wick_violation(const DensityMatrix& rho, int max_order);
/// order k -> sum_{|J| = k} |M_J - Pf(Sigma|_J)|^2, the moment-side route.
std::map<int, double> wick_deviation(const DensityMatrix& rho, int max_order);

OperatorMatrix swap_operator(ModeCount m);
/// tr(SWAP (rho (x) sigma)) evaluated densely.
double swap_overlap_dense(const DensityMatrix& rho, const DensityMatrix& sigma);

/// delta(J) indexed by mask, from the symbolic expansion of the per-mode
/// SWAP factors, so that tr(SWAP rho (x) rho) = sum_J delta(J) |M_J|^2.
std::vector<double> swap_delta(ModeCount m);
/// sum_J delta(J) |M_J|^2
double swap_purity_formula(const MomentTable& table, const std::vector<double>& delta);
/// sum_J delta(J) 2^{1-|J|/2} |M_J|^2
double swap_convolution_formula(const MomentTable& table, const std::vector<double>& delta);

/// |1 - tr(SWAP rho (x) rho^{[+]2})|
double swap_magic_measure(const DensityMatrix& rho);

struct MagicReport {
  double entropy_of_gaussification = 0.0;
  double matchgate_violation = 0.0;
  double matchgate_violation_covariance = 0.0;
  std::map<int, double> wick_violation_by_order;
  double swap_deficit = 0.0;

  struct Provenance {
    int modes = 0;
    std::optional<std::uint64_t> seed;
    double structural_tolerance = tol::kStructural;
    double prune_threshold = 0.0;
  } provenance;
};

MagicReport magic_report(const PureState& psi, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace fermag
