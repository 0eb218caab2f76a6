#pragma once

#include <cmath>
#include <numbers>

#include "spinlab/pauli.hpp"

namespace spinlab {

enum class Boundary { periodic, open };

struct ChainParams {
  std::size_t n_sites = 2;
  double j = 1.0;  // exchange coupling
  double b = 0.0;  // external field
  Boundary boundary = Boundary::periodic;
};

/// Lattice momentum k = 2 pi m / N kept as an exact integer ratio.
struct MagnonMomentum {
  std::size_t m = 0;
  std::size_t n_sites = 0;
  double k() const { return 2.0 * std::numbers::pi * static_cast<double>(m) / n_sites; }
};

/// XXX chain Hamiltonian with the constant shifts chosen so that the
/// all-down state has energy exactly zero for both boundary types.
/// Built in unit Paulis: sigma.sigma -> (XX + YY + ZZ)/4, sigma_z -> Z/2.
PauliSum build_hamiltonian(const ChainParams& p);

struct TotalSpin {
  PauliSum sx, sy, sz;
};

/// S_i = sum_a sigma_i^a, half-normalized (coefficients 1/2 on unit Paulis).
TotalSpin total_spin_ops(std::size_t n_sites);

/// Magnon creation operator: sum_a exp(ika) sigma_+^a,
/// with sigma_+ = (X + iY)/2.
PauliSum magnon_creation(const MagnonMomentum& k);

/// One-magnon dispersion E(k) = B + 2J sin^2(k/2).
double magnon_energy(const ChainParams& p, const MagnonMomentum& k);

/// [H, a_k^dag] as a canonical PauliSum.
PauliSum commutator_with_creation(const ChainParams& p, const MagnonMomentum& k);

struct YangianGenerators {
  PauliSum s2z, s2plus, s2minus;
};

/// Quadratic nonlocal generators, fixed site order 0..N-1:
/// S2z = sum_{a<b} (s+^a s-^b - s-^a s+^b),
/// S2pm = sum_{a<b} (sz^a spm^b - spm^a sz^b), half-normalized sigmas.
YangianGenerators yangian_quadratic(std::size_t n_sites);

}  // namespace spinlab
