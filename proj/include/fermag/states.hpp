#pragma once

// State constructors: presets and seeded random generators.

#include <cstdint>

#include "fermag/fock.hpp"

namespace fermag {

PureState vacuum(ModeCount m);

/// (|000> + |011> + |101> + |110>) / 2. Like every even pure state of three
/// or fewer modes it is Gaussian; it serves as a fixed regression state.
PureState reference_magic_state();

/// exp(iH)|0...0> for H = sum_jk h_jk a_j^dag a_k + (g_jk a_j^dag a_k^dag + h.c.),
/// h Hermitian and g antisymmetric (both m x m).
PureState gaussian_pure_from_quadratic(ModeCount m, const CMatrix& h, const CMatrix& g);

/// Haar-random vector on the even-parity sector.
PureState random_even_pure(ModeCount m, std::uint64_t seed);
/// Quadratic evolution of the vacuum with standard-normal couplings scaled by 1/sqrt(m).
PureState random_gaussian_pure(ModeCount m, std::uint64_t seed);
/// Normalized exp(-H) for a random quadratic Hamiltonian H.
DensityMatrix random_gaussian_mixed(ModeCount m, std::uint64_t seed);
/// Random full-rank even mixed state (mixture of Haar-random even pure states).
DensityMatrix random_even_mixed(ModeCount m, std::uint64_t seed);

/// Matrix of the quadratic Hamiltonian used by the Gaussian generators.
CMatrix quadratic_hamiltonian(ModeCount m, const CMatrix& h, const CMatrix& g);

}  // namespace fermag
