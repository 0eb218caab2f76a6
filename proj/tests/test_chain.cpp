#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "oracle.hpp"
#include "spinlab/basis.hpp"
#include "spinlab/chain.hpp"
#include "spinlab/eigensolver.hpp"

using namespace spinlab;
constexpr double kPi = std::numbers::pi;

namespace {

// relabel sites a -> a+1 (mod n) by rotating the symplectic masks
PauliSum translated(const PauliSum& s) {
  const std::size_t n = s.n_sites();
  const std::uint64_t full = (n == 64) ? ~0ULL : ((std::uint64_t{1} << n) - 1);
  auto rot = [&](std::uint64_t m) {
    return ((m << 1) | (m >> (n - 1))) & full;
  };
  PauliSum out(n);
  for (const auto& t : s.terms())
    out.add(PauliString(n, rot(t.x_mask()), rot(t.z_mask()), t.phase_exp(), t.coeff()));
  return out.canonical();
}

double residual_vs_energy(const PauliSum& h, const StateMap& psi, double e) {
  const StateMap hpsi = apply_to_state(h, psi);
  const StateMap diff = state_axpy(-e, psi, hpsi);
  return state_norm(diff) / state_norm(psi);
}

}  // namespace

TEST_CASE("all-down state has energy exactly zero for both boundaries") {
  for (const Boundary bc : {Boundary::periodic, Boundary::open}) {
    const ChainParams p{.n_sites = 6, .j = 1.0, .b = 0.7, .boundary = bc};
    const PauliSum h = build_hamiltonian(p);
    const StateMap vac{{0, 1.0}};
    CHECK(state_norm(apply_to_state(h, vac)) <= 1e-13);
  }
}

TEST_CASE("two-site periodic spectrum is {0, 0, 0, 2J}") {
  const double j = 1.7;
  const ChainParams p{.n_sites = 2, .j = j, .b = 0.0, .boundary = Boundary::periodic};
  const SpectrumReport r = spectrum(assemble(build_hamiltonian(p), SectorBasis::full(2)), -1);
  REQUIRE(r.eigenvalues.size() == 4);
  CHECK(std::abs(r.eigenvalues[0]) < 1e-13);
  CHECK(std::abs(r.eigenvalues[1]) < 1e-13);
  CHECK(std::abs(r.eigenvalues[2]) < 1e-13);
  CHECK(r.eigenvalues[3] == doctest::Approx(2 * j).epsilon(1e-13));
}

TEST_CASE("hamiltonian is hermitian and translation invariant (periodic)") {
  const ChainParams p{.n_sites = 6, .j = 1.2, .b = 0.4, .boundary = Boundary::periodic};
  const PauliSum h = build_hamiltonian(p);
  CHECK(h.is_hermitian());
  CHECK((translated(h) - h).is_zero(1e-13));
}

TEST_CASE("open chain is not translation invariant but has a matching spectrum structure") {
  const ChainParams p{.n_sites = 5, .j = 1.0, .b = 0.3, .boundary = Boundary::open};
  const PauliSum h = build_hamiltonian(p);
  CHECK(!(translated(h) - h).is_zero(1e-8));
  const StateMap vac{{0, 1.0}};
  CHECK(state_norm(apply_to_state(h, vac)) <= 1e-13);
}

TEST_CASE("symmetry algebra: [H, Sz] = 0 always, [H, Sx] = 0 iff B = 0") {
  const std::size_t n = 6;
  const TotalSpin s = total_spin_ops(n);
  const ChainParams with_field{.n_sites = n, .j = 1.0, .b = 0.9, .boundary = Boundary::periodic};
  const ChainParams no_field{.n_sites = n, .j = 1.0, .b = 0.0, .boundary = Boundary::periodic};
  const PauliSum hb = build_hamiltonian(with_field);
  const PauliSum h0 = build_hamiltonian(no_field);

  CHECK(commutator(hb, s.sz).is_zero(1e-12));
  CHECK(commutator(h0, s.sz).is_zero(1e-12));
  CHECK(commutator(h0, s.sx).is_zero(1e-12));
  CHECK(commutator(h0, s.sy).is_zero(1e-12));
  CHECK(!commutator(hb, s.sx).is_zero(1e-12));

  // dense norms for the quantitative version
  const Eigen::MatrixXcd dh = to_dense_full(hb);
  const Eigen::MatrixXcd dz = to_dense_full(s.sz);
  const Eigen::MatrixXcd dx = to_dense_full(s.sx);
  CHECK((dh * dz - dz * dh).norm() <= 1e-12);
  CHECK((dh * dx - dx * dh).norm() > 0.1);
}

TEST_CASE("total spin components satisfy [Sx, Sy] = i Sz") {
  const TotalSpin s = total_spin_ops(5);
  const complex i{0.0, 1.0};
  CHECK((commutator(s.sx, s.sy) - i * s.sz).is_zero(1e-13));
  CHECK((commutator(s.sy, s.sz) - i * s.sx).is_zero(1e-13));
  CHECK((commutator(s.sz, s.sx) - i * s.sy).is_zero(1e-13));
}

TEST_CASE("one-magnon plane waves are eigenstates with E = B + 2J sin^2(k/2)") {
  const ChainParams p{.n_sites = 8, .j = 1.4, .b = 0.25, .boundary = Boundary::periodic};
  const PauliSum h = build_hamiltonian(p);
  const StateMap vac{{0, 1.0}};
  for (std::size_t m = 0; m < p.n_sites; ++m) {
    const MagnonMomentum km{m, p.n_sites};
    const StateMap psi = apply_to_state(magnon_creation(km), vac);
    const double e = magnon_energy(p, km);
    CHECK(e == doctest::Approx(p.b + 2 * p.j * std::pow(std::sin(km.k() / 2), 2)).epsilon(1e-15));
    CHECK(residual_vs_energy(h, psi, e) <= 1e-12);
  }
}

TEST_CASE("one-magnon sector ED reproduces the dispersion as a multiset") {
  const ChainParams p{.n_sites = 12, .j = 1.0, .b = 0.5, .boundary = Boundary::periodic};
  const SpectrumReport r =
      spectrum(assemble(build_hamiltonian(p), SectorBasis::fixed_magnons(12, 1)), -1);
  std::vector<double> expect;
  for (std::size_t m = 0; m < 12; ++m) expect.push_back(magnon_energy(p, {m, 12}));
  std::sort(expect.begin(), expect.end());
  REQUIRE(r.eigenvalues.size() == 12);
  for (int i = 0; i < 12; ++i)
    CHECK(std::abs(r.eigenvalues[i] - expect[i]) < 1e-12);
}

TEST_CASE("[H, a_k^dag] acts as E(k) a_k^dag on the vacuum") {
  const ChainParams p{.n_sites = 10, .j = 1.0, .b = 0.3, .boundary = Boundary::periodic};
  const StateMap vac{{0, 1.0}};
  for (std::size_t m = 0; m < p.n_sites; ++m) {
    const MagnonMomentum km{m, p.n_sites};
    const PauliSum comm = commutator_with_creation(p, km);
    const StateMap lhs = apply_to_state(comm, vac);
    const StateMap rhs = apply_to_state(magnon_creation(km), vac);
    const StateMap diff = state_axpy(-magnon_energy(p, km), rhs, lhs);
    CHECK(state_norm(diff) / state_norm(rhs) <= 1e-12);
  }
}

TEST_CASE("at k = 0 the commutator is exactly B a_0^dag as an operator") {
  const ChainParams p{.n_sites = 8, .j = 1.0, .b = 0.6, .boundary = Boundary::periodic};
  const MagnonMomentum zero{0, 8};
  const PauliSum diff =
      commutator_with_creation(p, zero) - complex{p.b} * magnon_creation(zero);
  CHECK(diff.is_zero(1e-13));
}

TEST_CASE("the commutator residual operator does not vanish on one-magnon states") {
  // [H, a_k^dag] - E a_k^dag kills the vacuum but not the whole space
  const ChainParams p{.n_sites = 8, .j = 1.0, .b = 0.3, .boundary = Boundary::periodic};
  const MagnonMomentum km{2, 8};
  const PauliSum resid =
      commutator_with_creation(p, km) - complex{magnon_energy(p, km)} * magnon_creation(km);
  const StateMap one{{0b1, 1.0}};  // magnon localized at site 0
  CHECK(state_norm(apply_to_state(resid, one)) > 1e-3);
}

TEST_CASE("naive two-magnon product states are not eigenstates") {
  const ChainParams p{.n_sites = 8, .j = 1.0, .b = 0.0, .boundary = Boundary::periodic};
  const PauliSum h = build_hamiltonian(p);
  const StateMap vac{{0, 1.0}};
  const MagnonMomentum k1{1, 8}, k2{2, 8};
  const StateMap psi =
      apply_to_state(magnon_creation(k1), apply_to_state(magnon_creation(k2), vac));
  const double e = magnon_energy(p, k1) + magnon_energy(p, k2);
  CHECK(residual_vs_energy(h, psi, e) > 1e-3);
}

TEST_CASE("B = 0 eigenspaces are closed under the total raising operator") {
  const std::size_t n = 6;
  const ChainParams p{.n_sites = n, .j = 1.0, .b = 0.0, .boundary = Boundary::periodic};
  const OperatorMatrix m = assemble(build_hamiltonian(p), SectorBasis::full(n));
  const EigenSolution sol = eigensystem(m, -1);
  PauliSum splus(n);
  for (std::size_t a = 0; a < n; ++a) splus.add(complex{0.5} * single_site(a, PauliKind::Plus, n));
  const Eigen::MatrixXcd sp = to_dense_full(splus);
  const Eigen::MatrixXcd dh = to_dense_full(build_hamiltonian(p));
  for (std::size_t i = 0; i < sol.eigenvalues.size(); ++i) {
    const Eigen::VectorXcd w = sp * sol.eigenvectors.col(i);
    if (w.norm() < 1e-10) continue;  // highest-weight state annihilated
    CHECK((dh * w - sol.eigenvalues[i] * w).norm() / w.norm() <= 1e-10);
  }
}

TEST_CASE("yangian generators: term counting and magnetization covariance") {
  const std::size_t n = 6;
  const YangianGenerators y = yangian_quadratic(n);
  // each of the N(N-1)/2 ordered pairs contributes two canonical strings
  CHECK(y.s2z.canonical().size() == n * (n - 1));
  const TotalSpin s = total_spin_ops(n);
  CHECK(commutator(y.s2z, s.sz).is_zero(1e-12));
  // S2+/- shift Sz by +/-1: [Sz, S2pm] = pm S2pm
  const complex one{1.0};
  CHECK((commutator(s.sz, y.s2plus) - one * y.s2plus).is_zero(1e-12));
  CHECK((commutator(s.sz, y.s2minus) + one * y.s2minus).is_zero(1e-12));
  CHECK((adjoint(y.s2plus) + complex{-1.0} * y.s2minus).is_zero(1e-12));
}

TEST_CASE("yangian commutator norms are finite and boundary-dependent") {
  const std::size_t n = 6;
  const YangianGenerators y = yangian_quadratic(n);
  for (const Boundary bc : {Boundary::periodic, Boundary::open}) {
    const ChainParams p{.n_sites = n, .j = 1.0, .b = 0.0, .boundary = bc};
    const Eigen::MatrixXcd dh = to_dense_full(build_hamiltonian(p));
    const Eigen::MatrixXcd dz = to_dense_full(y.s2z);
    const double norm = (dh * dz - dz * dh).norm();
    CHECK(std::isfinite(norm));
  }
}
