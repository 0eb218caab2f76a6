#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "oracle.hpp"
#include "spinlab/eigensolver.hpp"
#include "spinlab/toric.hpp"

using namespace spinlab;

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("lattice geometry: colors split evenly, each vertex touches 2+2 faces") {
  const ToricLattice l(4, 6);
  CHECK(l.n_vertices() == 24);
  CHECK(l.all_faces(FaceColor::white).size() == 12);
  CHECK(l.all_faces(FaceColor::black).size() == 12);
  std::vector<int> white_touch(24, 0), black_touch(24, 0);
  for (const FaceColor c : {FaceColor::white, FaceColor::black})
    for (const Face f : l.all_faces(c))
      for (const std::size_t v : l.face_corners(f))
        (c == FaceColor::white ? white_touch : black_touch)[v]++;
  for (int v = 0; v < 24; ++v) {
    CHECK(white_touch[v] == 2);
    CHECK(black_touch[v] == 2);
  }
}

TEST_CASE("odd dimensions are rejected") {
  try {
    ToricLattice l(3, 4);
    FAIL("expected invalid_lattice");
  } catch (const Error& e) {
    CHECK(e.kind() == "invalid_lattice");
  }
  CHECK_THROWS_AS(ToricLattice(4, 5), Error);
  CHECK_THROWS_AS(ToricLattice(0, 4), Error);
}

TEST_CASE("plaquettes are weight-4, involutive, and mutually commuting") {
  const ToricLattice l(4, 4);
  std::vector<PauliString> plaqs;
  for (const FaceColor c : {FaceColor::white, FaceColor::black})
    for (const Face f : l.all_faces(c)) plaqs.push_back(plaquette_operator(l, f));
  REQUIRE(plaqs.size() == 16);
  for (const PauliString& p : plaqs) {
    CHECK(std::popcount(p.x_mask() | p.z_mask()) == 4);
    const PauliString sq = multiply(p, p);
    CHECK(sq.is_identity_mask());
    CHECK(sq.phase_exp() == 0);
  }
  for (std::size_t i = 0; i < plaqs.size(); ++i)
    for (std::size_t j = i + 1; j < plaqs.size(); ++j) CHECK(commutes(plaqs[i], plaqs[j]));
}

TEST_CASE("white faces give X-strings, black faces give Z-strings") {
  const ToricLattice l(4, 4);
  const PauliString w = plaquette_operator(l, Face{1, 1});  // (1+1) even: white
  CHECK(w.z_mask() == 0);
  CHECK(std::popcount(w.x_mask()) == 4);
  const PauliString b = plaquette_operator(l, Face{1, 0});
  CHECK(b.x_mask() == 0);
  CHECK(std::popcount(b.z_mask()) == 4);
}

TEST_CASE("constraint products are the identity on the torus") {
  for (const auto [lx, ly] : {std::pair<std::size_t, std::size_t>{2, 2}, {4, 4}, {2, 4}}) {
    const ToricLattice l(lx, ly);
    const auto [pw, pb] = constraint_products(l);
    CHECK(pw == PauliString::identity(l.n_vertices()));
    CHECK(pb == PauliString::identity(l.n_vertices()));
  }
}

TEST_CASE("2x4 torus: full spectrum matches the plaquette-flip counting formula") {
  const ToricLattice l(2, 4);
  const OperatorMatrix m = assemble(build_toric_hamiltonian(l), SectorBasis::full(8));
  const SpectrumReport r = spectrum(m, -1, 1e-10);
  REQUIRE(r.eigenvalues.size() == 256);
  // expected: E = -8 + 2(fw + fb), fw and fb even, multiplicity 4 C(4,fw) C(4,fb)
  std::map<int, std::size_t> expect;
  for (int fw = 0; fw <= 4; fw += 2)
    for (int fb = 0; fb <= 4; fb += 2)
      expect[-8 + 2 * (fw + fb)] += 4 * binom(4, fw) * binom(4, fb);
  std::map<int, std::size_t> got;
  for (const double e : r.eigenvalues) {
    const double rounded = std::round(e);
    CHECK(std::abs(e - rounded) <= 1e-10);
    got[static_cast<int>(rounded)]++;
  }
  CHECK(got == expect);
  CHECK(r.eigenvalues.front() == doctest::Approx(-8.0).epsilon(1e-12));
  CHECK(r.ground_degeneracy == 4);
  CHECK(r.gap == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("2x4 ground vectors are +1 eigenstates of every stabilizer") {
  const ToricLattice l(2, 4);
  const OperatorMatrix m = assemble(build_toric_hamiltonian(l), SectorBasis::full(8));
  const EigenSolution sol = eigensystem(m, 4, 1e-12);
  for (int g = 0; g < 4; ++g) {
    const Eigen::VectorXcd v = sol.eigenvectors.col(g);
    for (const FaceColor c : {FaceColor::white, FaceColor::black})
      for (const Face f : l.all_faces(c)) {
        PauliSum p(8);
        p.add(plaquette_operator(l, f));
        const Eigen::MatrixXcd dp = to_dense_full(p);
        CHECK(std::abs(v.dot(dp * v) - complex{1.0}) < 1e-9);
      }
  }
}

TEST_CASE("a length-4 closed black loop is the enclosed white plaquette") {
  const ToricLattice l(4, 4);
  BishopPath loop{FaceColor::black, {{0, 1}, {1, 0}, {2, 1}, {1, 2}}, true};
  const PauliString op = line_operator(l, loop);
  CHECK(op == plaquette_operator(l, Face{1, 1}));
  // nullhomologous loop creates no excitations
  const PauliString ops[] = {op};
  CHECK(excitation_energy(l, ops) == 0.0);
}

TEST_CASE("the boundary of two adjacent white faces is their plaquette product") {
  const ToricLattice l(4, 4);
  BishopPath loop{FaceColor::black, {{0, 1}, {1, 0}, {2, 1}, {3, 2}, {2, 3}, {1, 2}}, true};
  const PauliString op = line_operator(l, loop);
  const PauliString prod =
      multiply(plaquette_operator(l, Face{1, 1}), plaquette_operator(l, Face{2, 2}));
  CHECK(op == prod);
}

TEST_CASE("an open string anticommutes with exactly its endpoint plaquettes") {
  const ToricLattice l(4, 4);
  BishopPath seg{FaceColor::black, {{1, 0}, {2, 1}, {3, 2}}, false};
  const PauliString w = line_operator(l, seg);
  std::size_t anti = 0;
  for (const Face f : l.all_faces(FaceColor::black)) {
    const bool c = commutes(w, plaquette_operator(l, f));
    const bool endpoint = (f == Face{1, 0}) || (f == Face{3, 2});
    CHECK(c == !endpoint);
    if (!c) ++anti;
  }
  for (const Face f : l.all_faces(FaceColor::white))
    CHECK(commutes(w, plaquette_operator(l, f)));
  CHECK(anti == 2);
  const PauliString ops[] = {w};
  CHECK(excitation_energy(l, ops) == 4.0);
}

TEST_CASE("single-vertex flips cost 4, merging excitations costs 4 not 8") {
  const ToricLattice l(4, 4);
  const PauliString xu = pauli_x(l.vertex_index(2, 1), 16);
  const PauliString xv = pauli_x(l.vertex_index(2, 2), 16);
  const PauliString one[] = {xu};
  CHECK(excitation_energy(l, one) == 4.0);
  // u and v share the black face (2,1): the pair creates only 2 defects
  const PauliString two[] = {xu, xv};
  CHECK(excitation_energy(l, two) == 4.0);
}

TEST_CASE("a local flip shifts the 2x4 ED energy by exactly the predicted gap") {
  const ToricLattice l(2, 4);
  const OperatorMatrix m = assemble(build_toric_hamiltonian(l), SectorBasis::full(8));
  const EigenSolution sol = eigensystem(m, 1, 1e-12);
  const double e0 = sol.eigenvalues[0];
  PauliSum flip(8);
  flip.add(pauli_x(l.vertex_index(0, 1), 8));
  const PauliString ops[] = {pauli_x(l.vertex_index(0, 1), 8)};
  const double de = excitation_energy(l, ops);
  CHECK(de == 4.0);
  const Eigen::MatrixXcd dh = m.to_dense();
  const Eigen::VectorXcd psi = to_dense_full(flip) * sol.eigenvectors.col(0);
  CHECK((dh * psi - (e0 + de) * psi).norm() / psi.norm() <= 1e-10);
}

TEST_CASE("braiding: disjoint strings give +1, a single crossing gives -1") {
  const ToricLattice l(4, 4);
  const BishopPath w{FaceColor::black, {{0, 1}, {1, 2}}, false};         // site (1,2)
  const BishopPath b_disjoint{FaceColor::white, {{1, 1}, {2, 2}}, false};  // site (2,2)
  const BishopPath b_crossing{FaceColor::white, {{0, 2}, {1, 1}}, false};  // site (1,2)
  CHECK(braiding_phase(l, w, b_disjoint) == 1);
  CHECK(braiding_phase(l, w, b_crossing) == -1);
  // phase equals the string anticommutation sign
  CHECK(commutes(line_operator(l, w), line_operator(l, b_disjoint)));
  CHECK(!commutes(line_operator(l, w), line_operator(l, b_crossing)));
}

TEST_CASE("random string pairs: crossing parity always matches commutation") {
  // braiding_phase cross-checks the site count against the symplectic
  // form internally and throws on any mismatch
  std::mt19937_64 rng(0x5eed5eedULL);
  for (const auto [lx, ly] : {std::pair<std::size_t, std::size_t>{4, 4}, {6, 6}}) {
    const ToricLattice l(lx, ly);
    for (int it = 0; it < 250; ++it) {
      const std::size_t steps = 1 + rng() % 6;
      const BishopPath w = random_bishop_path(l, FaceColor::black, steps, rng);
      const BishopPath b = random_bishop_path(l, FaceColor::white, 1 + rng() % 6, rng);
      const int phase = braiding_phase(l, w, b);
      const bool comm = commutes(line_operator(l, w), line_operator(l, b));
      CHECK(phase == (comm ? 1 : -1));
    }
  }
}

TEST_CASE("path deformation by a closed loop preserves the braiding phase") {
  const ToricLattice l(6, 6);
  const BishopPath direct{FaceColor::white, {{0, 0}, {1, 1}, {2, 2}}, false};
  // detour around the black face (2,1) before rejoining
  const BishopPath detour{FaceColor::white, {{0, 0}, {1, 1}, {2, 0}, {3, 1}, {2, 2}}, false};
  const BishopPath w{FaceColor::black, {{3, 4}, {4, 5}}, false};
  CHECK(braiding_phase(l, w, direct) == braiding_phase(l, w, detour));
}

TEST_CASE("malformed paths are rejected") {
  const ToricLattice l(4, 4);
  CHECK_THROWS_AS(path_sites(l, BishopPath{FaceColor::white, {{0, 0}}, false}), Error);
  // wrong color face in a white path
  CHECK_THROWS_AS(path_sites(l, BishopPath{FaceColor::white, {{0, 0}, {1, 0}}, false}), Error);
  // same-color faces that are not diagonal neighbors
  CHECK_THROWS_AS(path_sites(l, BishopPath{FaceColor::white, {{0, 0}, {2, 2}}, false}), Error);
}

TEST_CASE("logical zigzag algebra on 4x4 certifies degeneracy 4") {
  const ToricLattice l(4, 4);
  const LogicalAlgebraReport rep = logical_algebra(l);
  for (const auto& [name, ok] : rep.relations) {
    INFO(name);
    CHECK(ok);
  }
  CHECK(rep.all_verified());
  CHECK(rep.degeneracy == 4);
  // the anticommuting pairs directly
  CHECK(!commutes(rep.w_x, rep.b_y));
  CHECK(!commutes(rep.w_y, rep.b_x));
  CHECK(commutes(rep.w_x, rep.b_x));
  CHECK(commutes(rep.w_y, rep.b_y));
  CHECK(commutes(rep.w_x, rep.w_y));
  CHECK(commutes(rep.b_x, rep.b_y));
  // logicals commute with the Hamiltonian termwise
  for (const FaceColor c : {FaceColor::white, FaceColor::black})
    for (const Face f : l.all_faces(c)) {
      const PauliString h = plaquette_operator(l, f);
      CHECK(commutes(rep.w_x, h));
      CHECK(commutes(rep.w_y, h));
      CHECK(commutes(rep.b_x, h));
      CHECK(commutes(rep.b_y, h));
    }
}

TEST_CASE("width-2 torus has no valid wrapping zigzag") {
  const ToricLattice l(2, 4);
  try {
    logical_algebra(l);
    FAIL("expected malformed_path");
  } catch (const Error& e) {
    CHECK(e.kind() == "malformed_path");
  }
}

TEST_CASE("gf2_rank on known matrices") {
  CHECK(gf2_rank({{0b1ULL}, {0b10ULL}, {0b11ULL}}) == 2);
  CHECK(gf2_rank({{0ULL}}) == 0);
  CHECK(gf2_rank({{0b111ULL}, {0b111ULL}}) == 1);
}

TEST_CASE("stabilizer rank certifies degeneracy 4 on growing tori") {
  for (const auto [lx, ly] : {std::pair<std::size_t, std::size_t>{2, 4}, {4, 4}, {6, 6}, {8, 8}}) {
    const ToricLattice l(lx, ly);
    const DegeneracyCertificate cert = stabilizer_degeneracy(l);
    CHECK(cert.method == "gf2_rank");
    CHECK(cert.n_vertices == lx * ly);
    CHECK(cert.rank == lx * ly - 2);  // two independent constraint relations
    CHECK(cert.degeneracy == 4);
  }
}

TEST_CASE("ED and GF(2) degeneracies agree on the 2x4 torus") {
  const ToricLattice l(2, 4);
  const SpectrumReport r =
      spectrum(assemble(build_toric_hamiltonian(l), SectorBasis::full(8)), -1, 1e-10);
  CHECK(static_cast<std::size_t>(r.ground_degeneracy) == stabilizer_degeneracy(l).degeneracy);
}

TEST_CASE("random bishop paths are valid by construction") {
  std::mt19937_64 rng(123);
  const ToricLattice l(6, 4);
  for (int it = 0; it < 100; ++it) {
    const FaceColor c = (rng() & 1) ? FaceColor::white : FaceColor::black;
    const std::size_t steps = 1 + rng() % 8;
    const BishopPath p = random_bishop_path(l, c, steps, rng);
    CHECK(p.faces.size() == steps + 1);
    CHECK_NOTHROW(path_sites(l, p));
    for (const Face f : p.faces) CHECK(l.color(f) == c);
  }
}
