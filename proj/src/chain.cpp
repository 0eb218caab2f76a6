#include "spinlab/chain.hpp"

#include <cmath>

namespace spinlab {

namespace {

void check_params(const ChainParams& p) {
  if (p.n_sites < 2)
    throw Error("invalid_argument", "chain needs at least 2 sites");
  if (p.n_sites > PauliString::kMaxSites)
    throw Error("invalid_argument", "chain too long for mask width");
  if (!std::isfinite(p.j) || !std::isfinite(p.b))
    throw Error("invalid_argument", "couplings must be finite");
}

// half-normalized sigma_+ = (X + iY)/2 at one site
PauliSum sigma_plus(std::size_t a, std::size_t n) {
  PauliSum s(n);
  s.add(pauli_x(a, n).with_coeff(0.5));
  s.add(pauli_y(a, n).with_coeff({0, 0.5}));
  return s;
}

PauliSum sigma_minus(std::size_t a, std::size_t n) {
  PauliSum s(n);
  s.add(pauli_x(a, n).with_coeff(0.5));
  s.add(pauli_y(a, n).with_coeff({0, -0.5}));
  return s;
}

PauliSum sigma_z_half(std::size_t a, std::size_t n) {
  PauliSum s(n);
  s.add(pauli_z(a, n).with_coeff(0.5));
  return s;
}

}  // namespace

PauliSum build_hamiltonian(const ChainParams& p) {
  check_params(p);
  const std::size_t n = p.n_sites;
  const std::size_t bonds = (p.boundary == Boundary::periodic) ? n : n - 1;
  PauliSum h(n);
  // one quarter of J per bond from the half-normalization, applied to XX+YY+ZZ
  for (std::size_t a = 0; a < bonds; ++a) {
    const std::size_t b = (a + 1) % n;
    h.add(multiply(pauli_x(a, n), pauli_x(b, n)).with_coeff(-p.j / 4));
    h.add(multiply(pauli_y(a, n), pauli_y(b, n)).with_coeff(-p.j / 4));
    h.add(multiply(pauli_z(a, n), pauli_z(b, n)).with_coeff(-p.j / 4));
  }
  for (std::size_t a = 0; a < n; ++a) h.add(pauli_z(a, n).with_coeff(p.b / 2));
  // constant shifts: one J/4 per bond plus B/2 per site puts the
  // all-down state at energy zero
  h.add_identity(p.j * static_cast<double>(bonds) / 4 + p.b * static_cast<double>(n) / 2);
  return h.canonical();
}

TotalSpin total_spin_ops(std::size_t n) {
  TotalSpin s{PauliSum(n), PauliSum(n), PauliSum(n)};
  for (std::size_t a = 0; a < n; ++a) {
    s.sx.add(pauli_x(a, n).with_coeff(0.5));
    s.sy.add(pauli_y(a, n).with_coeff(0.5));
    s.sz.add(pauli_z(a, n).with_coeff(0.5));
  }
  return s;
}

PauliSum magnon_creation(const MagnonMomentum& mk) {
  const std::size_t n = mk.n_sites;
  if (n < 2 || mk.m >= n)
    throw Error("invalid_argument", "momentum index out of range");
  PauliSum a_dag(n);
  for (std::size_t a = 0; a < n; ++a) {
    const double phi = mk.k() * static_cast<double>(a);
    a_dag.add(complex{std::cos(phi), std::sin(phi)} * sigma_plus(a, n));
  }
  return a_dag.canonical();
}

double magnon_energy(const ChainParams& p, const MagnonMomentum& mk) {
  const double s = std::sin(mk.k() / 2);
  return p.b + 2 * p.j * s * s;
}

PauliSum commutator_with_creation(const ChainParams& p, const MagnonMomentum& mk) {
  check_params(p);
  if (p.boundary != Boundary::periodic)
    throw Error("invalid_argument", "magnon momenta require periodic boundary");
  if (mk.n_sites != p.n_sites)
    throw Error("dimension_mismatch", "momentum/chain size mismatch");
  return commutator(build_hamiltonian(p), magnon_creation(mk));
}

YangianGenerators yangian_quadratic(std::size_t n) {
  YangianGenerators g{PauliSum(n), PauliSum(n), PauliSum(n)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      g.s2z.add(sigma_plus(a, n) * sigma_minus(b, n) - sigma_minus(a, n) * sigma_plus(b, n));
      g.s2plus.add(sigma_z_half(a, n) * sigma_plus(b, n) - sigma_plus(a, n) * sigma_z_half(b, n));
      g.s2minus.add(sigma_z_half(a, n) * sigma_minus(b, n) -
                    sigma_minus(a, n) * sigma_z_half(b, n));
    }
  }
  g.s2z = g.s2z.canonical();
  g.s2plus = g.s2plus.canonical();
  g.s2minus = g.s2minus.canonical();
  return g;
}

}  // namespace spinlab
