#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "spinlab/pauli.hpp"

namespace spinlab {

enum class FaceColor { white, black };

struct Face {
  std::int64_t x = 0, y = 0;
  friend bool operator==(const Face&, const Face&) = default;
};

/// Even-by-even periodic vertex lattice with chessboard-colored unit
/// cells. Spins live on vertices; a face's operator acts on its four
/// corner vertices.
class ToricLattice {
 public:
  ToricLattice(std::size_t lx, std::size_t ly);

  std::size_t lx() const noexcept { return lx_; }
  std::size_t ly() const noexcept { return ly_; }
  std::size_t n_vertices() const noexcept { return lx_ * ly_; }
  std::size_t n_faces() const noexcept { return lx_ * ly_; }

  std::size_t vertex_index(std::int64_t x, std::int64_t y) const;
  Face wrap(Face f) const;
  FaceColor color(Face f) const;
  std::array<std::size_t, 4> face_corners(Face f) const;
  std::vector<Face> all_faces(FaceColor c) const;

 private:
  std::size_t lx_, ly_;
};

/// Same-color diagonal face path; its operator acts on the vertex shared
/// by each consecutive face pair (plus the wrap pair when closed).
struct BishopPath {
  FaceColor color = FaceColor::white;
  std::vector<Face> faces;
  bool closed = false;
};

/// Shared vertices of consecutive face pairs, with multiplicity and in
/// path order. Validates colors and single-vertex adjacency.
std::vector<std::size_t> path_sites(const ToricLattice& l, const BishopPath& p);

/// Weight-4 X-string (white face) or Z-string (black face), unit Paulis.
PauliString plaquette_operator(const ToricLattice& l, Face f);

/// H = -sum_w h_w - sum_b h_b.
PauliSum build_toric_hamiltonian(const ToricLattice& l);

/// Product over all white (resp. black) plaquettes; identity on a torus.
std::pair<PauliString, PauliString> constraint_products(const ToricLattice& l);

/// X-string on a black path (a W operator), Z-string on a white path (B).
PauliString line_operator(const ToricLattice& l, const BishopPath& p);

/// (-1)^(shared-site count), cross-checked against the symplectic
/// commutation of the two strings.
int braiding_phase(const ToricLattice& l, const BishopPath& w_path, const BishopPath& b_path);

/// 2 * (number of plaquettes anticommuting with the product of ops).
double excitation_energy(const ToricLattice& l, std::span<const PauliString> ops);

struct LogicalAlgebraReport {
  PauliString w_x, w_y, b_x, b_y;
  std::map<std::string, bool> relations;  // per-relation pass/fail
  std::size_t degeneracy = 0;
  bool all_verified() const;
};

/// Zigzag wrapping paths with winding (1,0) and (0,1) for both colors;
/// degeneracy 4 follows from the two anticommuting pairs when all
/// relations verify.
LogicalAlgebraReport logical_algebra(const ToricLattice& l);

/// GF(2) row rank of a binary matrix, 64-bit-word packed rows.
std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows);

struct DegeneracyCertificate {
  std::string method;  // "ed" or "gf2_rank"
  std::size_t n_vertices = 0;
  std::size_t rank = 0;  // stabilizer generator rank (gf2_rank method)
  std::size_t degeneracy = 0;
};

/// 2^(n - rank) from GF(2) elimination on the symplectic generator matrix.
DegeneracyCertificate stabilizer_degeneracy(const ToricLattice& l);

/// Uniform random open bishop walk, for property sweeps.
BishopPath random_bishop_path(const ToricLattice& l, FaceColor color, std::size_t steps,
                              std::mt19937_64& rng);

}  // namespace spinlab
