#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/error.hpp"

namespace spinlab {

using complex = std::complex<double>;

/// Unit-normalized Pauli group: X, Y, Z square to the identity.
/// A string is stored in binary-symplectic form as
///   coeff * i^phase * (prod_a X_a^{x_a}) * (prod_a Z_a^{z_a}),
/// so a site with both bits set carries the product XZ = -iY; the phase
/// exponent keeps track of the resulting powers of i exactly (mod 4).
class PauliString {
 public:
  static constexpr std::size_t kMaxSites = 64;

  PauliString(std::size_t n_sites, std::uint64_t x_mask, std::uint64_t z_mask,
              int phase_exp = 0, complex coeff = 1.0);

  /// Identity on n sites.
  static PauliString identity(std::size_t n_sites, complex coeff = 1.0);

  std::size_t n_sites() const noexcept { return n_sites_; }
  std::uint64_t x_mask() const noexcept { return x_mask_; }
  std::uint64_t z_mask() const noexcept { return z_mask_; }
  /// Exponent p in i^p, always in {0,1,2,3}.
  int phase_exp() const noexcept { return phase_exp_; }
  complex phase() const noexcept;
  complex coeff() const noexcept { return coeff_; }

  PauliString with_coeff(complex c) const;

  bool is_identity_mask() const noexcept { return x_mask_ == 0 && z_mask_ == 0; }

  /// Canonical text form, e.g. "+i * X0 Z3 Y5"; the identity prints as
  /// "+1 * I". A coefficient other than 1 is prefixed as "(re,im) ".
  std::string str() const;
  static PauliString parse(const std::string& text, std::size_t n_sites);

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::size_t n_sites_;
  std::uint64_t x_mask_;
  std::uint64_t z_mask_;
  int phase_exp_;
  complex coeff_;
};

enum class PauliKind { X, Y, Z, Plus, Minus };

PauliString pauli_x(std::size_t site, std::size_t n_sites);
PauliString pauli_y(std::size_t site, std::size_t n_sites);
PauliString pauli_z(std::size_t site, std::size_t n_sites);

/// Exact product p*q with phase tracked as an integer power of i.
PauliString multiply(const PauliString& p, const PauliString& q);

/// True iff pq = qp (coefficients ignored): symplectic form
/// <p.x, q.z> + <p.z, q.x> = 0 (mod 2).
bool commutes(const PauliString& p, const PauliString& q);

/// Conjugate transpose.
PauliString adjoint(const PauliString& p);

/// A complex-weighted sum of Pauli strings on a fixed number of sites.
class PauliSum {
 public:
  explicit PauliSum(std::size_t n_sites) : n_sites_(n_sites) {}
  PauliSum(std::size_t n_sites, std::vector<PauliString> terms);

  std::size_t n_sites() const noexcept { return n_sites_; }
  const std::vector<PauliString>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  PauliSum& add(const PauliString& term);
  PauliSum& add(const PauliSum& other);
  PauliSum& add_identity(complex c);

  /// Merge terms with equal masks (phases folded into coefficients) and
  /// drop coefficients below tol.
  PauliSum canonical(double tol = 1e-15) const;

  bool is_zero(double tol = 1e-12) const;
  bool is_hermitian(double tol = 1e-12) const;

  friend PauliSum operator+(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator-(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator*(complex c, const PauliSum& a);

 private:
  std::size_t n_sites_;
  std::vector<PauliString> terms_;
};

PauliSum adjoint(const PauliSum& s);

/// ab - ba, canonicalized.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Single-site operator as a (one- or two-term) sum; Plus/Minus are the
/// unit-normalized ladder combinations X +/- iY.
PauliSum single_site(std::size_t site, PauliKind kind, std::size_t n_sites);

}  // namespace spinlab
