#pragma once

// Covariance extraction, Majorana normal forms and the Gaussification rho_G:
// the Gaussian state with the same second-order moments as rho.
//
// Majorana operators: gamma_{2j-1} = a_j + a_j^dag, gamma_{2j} = i(a_j - a_j^dag).
// Majorana covariance: G_kl = (i/2) tr(rho [gamma_k, gamma_l]), so that the
// vacuum of one mode has G = [[0, 1], [-1, 0]].

#include <span>

#include "fermag/charfn.hpp"
#include "fermag/fock.hpp"

namespace fermag {

class MajoranaCovariance {
 public:
  MajoranaCovariance(RMatrix entries, ModeCount modes);

  const RMatrix& matrix() const { return entries_; }
  ModeCount modes() const { return modes_; }

 private:
  RMatrix entries_;
  ModeCount modes_;
};

/// G = O * blockdiag([[0, l_j], [-l_j, 0]]) * O^T with det O = +1.
/// |l_j| is non-increasing; every entry but the last is non-negative, and the
/// last carries the sign that det O = +1 leaves over (Pf G < 0).
struct NormalForm {
  RMatrix rotation;
  RVector lambdas;
};

CovarianceMatrix covariance(const DensityMatrix& rho);

MajoranaCovariance to_majorana(const CovarianceMatrix& sigma);
CovarianceMatrix from_majorana(const MajoranaCovariance& g);

OperatorMatrix majorana_op(int sites, int index);

NormalForm normal_form(const MajoranaCovariance& g);
RMatrix normal_form_matrix(const RVector& lambdas);

/// Real antisymmetric h with exp(h) = o, for a special orthogonal o.
RMatrix real_log_orthogonal(const RMatrix& o);

/// Fock-space unitary R with R gamma_l R^dag = sum_j o_jl gamma_j.
OperatorMatrix majorana_rotation(const RMatrix& o);

/// Gaussian state with Majorana covariance O B(lambda) O^T.
DensityMatrix gaussian_state(const NormalForm& form);

DensityMatrix gaussify(const DensityMatrix& rho);

/// Sum_j h2((1 + |l_j|) / 2) in nats.
double gaussian_entropy(std::span<const double> lambdas);
double gaussian_entropy(const RVector& lambdas);

double relative_entropy_to_gaussian(const DensityMatrix& rho);

}  // namespace fermag
