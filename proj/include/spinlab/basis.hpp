#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "spinlab/pauli.hpp"

namespace spinlab {

/// Computational basis state: bit a = 1 iff site a is spin-up.
using BasisState = std::uint64_t;

inline int magnon_count(BasisState s) { return std::popcount(s); }

/// Sector to build a basis for: a fixed up-spin count, or the full space.
struct Sector {
  static constexpr int kAll = -1;
  int magnons = kAll;
  bool is_all() const noexcept { return magnons == kAll; }
  friend bool operator==(const Sector&, const Sector&) = default;
};

/// Ordered enumeration of basis states with fixed up-spin count (or the
/// full 2^n space), with rank/unrank maps. States increase as integers.
class SectorBasis {
 public:
  SectorBasis(std::size_t n_sites, Sector sector);

  static SectorBasis full(std::size_t n_sites) { return SectorBasis(n_sites, Sector{}); }
  static SectorBasis fixed_magnons(std::size_t n_sites, int magnons) {
    return SectorBasis(n_sites, Sector{magnons});
  }

  std::size_t n_sites() const noexcept { return n_sites_; }
  Sector sector() const noexcept { return sector_; }
  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<BasisState>& states() const noexcept { return states_; }

  BasisState unrank(std::size_t i) const { return states_.at(i); }
  std::optional<std::size_t> rank(BasisState s) const;

 private:
  std::size_t n_sites_;
  Sector sector_;
  std::vector<BasisState> states_;
  std::unordered_map<BasisState, std::size_t> rank_map_;  // empty for full basis
};

/// p|s> = amplitude |t>, exact: t = s ^ x_mask, amplitude collects the
/// Z signs on s, the stored phase and the coefficient.
std::pair<complex, BasisState> apply_pauli(const PauliString& p, BasisState s);

/// Sparse state over the full computational basis; convenient for
/// operators that do not preserve a sector.
using StateMap = std::unordered_map<BasisState, complex>;

StateMap apply_to_state(const PauliSum& h, const StateMap& psi);
double state_norm(const StateMap& psi);
StateMap state_axpy(complex a, const StateMap& x, const StateMap& y);  // a*x + y

/// Sparse matrix of a PauliSum over a SectorBasis, compressed rows.
class OperatorMatrix {
 public:
  OperatorMatrix(SectorBasis basis, std::vector<std::size_t> row_ptr,
                 std::vector<std::size_t> cols, std::vector<complex> values);

  const SectorBasis& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t nnz() const noexcept { return values_.size(); }

  const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<std::size_t>& cols() const noexcept { return cols_; }
  const std::vector<complex>& values() const noexcept { return values_; }

  void matvec(const complex* x, complex* y) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  Eigen::MatrixXcd to_dense() const;

  /// Infinity norm (max absolute row sum); cheap scale estimate.
  double norm_inf() const;

  bool is_hermitian(double tol = 1e-14) const;

 private:
  SectorBasis basis_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<complex> values_;
};

/// Assemble <row|h|col> over the basis. For a sector-restricted basis the
/// sum must commute with total Sz; a violating term is reported by name.
OperatorMatrix assemble(const PauliSum& h, const SectorBasis& basis, unsigned threads = 1);

/// Dense matrix of h on the given basis, built column-by-column through
/// apply_pauli. Intended for small n.
Eigen::MatrixXcd to_dense(const PauliSum& h, const SectorBasis& basis);
Eigen::MatrixXcd to_dense_full(const PauliSum& h);

}  // namespace spinlab
