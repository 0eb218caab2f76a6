#include "spinlab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

namespace spinlab {

namespace {

std::uint64_t site_bit(std::size_t site) { return std::uint64_t{1} << site; }

void check_sites(std::size_t n_sites) {
  if (n_sites == 0 || n_sites > PauliString::kMaxSites)
    throw Error("invalid_argument",
                "n_sites must be in [1, " + std::to_string(PauliString::kMaxSites) + "], got " +
                    std::to_string(n_sites));
}

void check_site(std::size_t site, std::size_t n_sites) {
  if (site >= n_sites)
    throw Error("index_error", "site " + std::to_string(site) + " out of range for " +
                                   std::to_string(n_sites) + " sites");
}

void check_same_sites(const PauliString& p, const PauliString& q) {
  if (p.n_sites() != q.n_sites())
    throw Error("dimension_mismatch", "site counts differ: " + std::to_string(p.n_sites()) +
                                          " vs " + std::to_string(q.n_sites()));
}

constexpr complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliString::PauliString(std::size_t n_sites, std::uint64_t x_mask, std::uint64_t z_mask,
                         int phase_exp, complex coeff)
    : n_sites_(n_sites), x_mask_(x_mask), z_mask_(z_mask),
      phase_exp_(((phase_exp % 4) + 4) % 4), coeff_(coeff) {
  check_sites(n_sites);
  const std::uint64_t mask = n_sites == 64 ? ~std::uint64_t{0} : (site_bit(n_sites) - 1);
  if ((x_mask & ~mask) != 0 || (z_mask & ~mask) != 0)
    throw Error("index_error", "mask bit set beyond site count");
}

PauliString PauliString::identity(std::size_t n_sites, complex coeff) {
  return PauliString(n_sites, 0, 0, 0, coeff);
}

complex PauliString::phase() const noexcept { return kPhases[phase_exp_]; }

PauliString PauliString::with_coeff(complex c) const {
  PauliString r = *this;
  r.coeff_ = c;
  return r;
}

PauliString pauli_x(std::size_t site, std::size_t n_sites) {
  check_sites(n_sites);
  check_site(site, n_sites);
  return PauliString(n_sites, site_bit(site), 0);
}

PauliString pauli_z(std::size_t site, std::size_t n_sites) {
  check_sites(n_sites);
  check_site(site, n_sites);
  return PauliString(n_sites, 0, site_bit(site));
}

PauliString pauli_y(std::size_t site, std::size_t n_sites) {
  check_sites(n_sites);
  check_site(site, n_sites);
  // Y = i XZ
  return PauliString(n_sites, site_bit(site), site_bit(site), 1);
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  check_same_sites(p, q);
  // Commuting Z^{z_p} past X^{x_q} picks up (-1) per overlapping site.
  const int swaps = std::popcount(p.z_mask() & q.x_mask());
  return PauliString(p.n_sites(), p.x_mask() ^ q.x_mask(), p.z_mask() ^ q.z_mask(),
                     p.phase_exp() + q.phase_exp() + 2 * swaps, p.coeff() * q.coeff());
}

bool commutes(const PauliString& p, const PauliString& q) {
  check_same_sites(p, q);
  const int form = std::popcount(p.x_mask() & q.z_mask()) + std::popcount(p.z_mask() & q.x_mask());
  return form % 2 == 0;
}

PauliString adjoint(const PauliString& p) {
  // (i^p X Z)^dag = (-i)^p Z X = (-i)^p (-1)^{|x&z|} X Z
  const int overlap = std::popcount(p.x_mask() & p.z_mask());
  return PauliString(p.n_sites(), p.x_mask(), p.z_mask(), -p.phase_exp() + 2 * overlap,
                     std::conj(p.coeff()));
}

std::string PauliString::str() const {
  std::ostringstream out;
  out.precision(17);
  if (coeff_ != complex{1.0, 0.0}) out << "(" << coeff_.real() << "," << coeff_.imag() << ") ";
  // When printing a site with both bits as Y, absorb the -i from XZ = -iY.
  const int y_count = std::popcount(x_mask_ & z_mask_);
  static const char* kPhaseNames[4] = {"+1", "+i", "-1", "-i"};
  out << kPhaseNames[((phase_exp_ - y_count) % 4 + 4) % 4] << " *";
  if (is_identity_mask()) {
    out << " I";
    return out.str();
  }
  for (std::size_t s = 0; s < n_sites_; ++s) {
    const bool x = (x_mask_ >> s) & 1, z = (z_mask_ >> s) & 1;
    if (x && z)
      out << " Y" << s;
    else if (x)
      out << " X" << s;
    else if (z)
      out << " Z" << s;
  }
  return out.str();
}

PauliString PauliString::parse(const std::string& text, std::size_t n_sites) {
  std::istringstream in(text);
  std::string tok;
  if (!(in >> tok)) throw Error("parse_error", "empty Pauli string");
  complex coeff{1.0, 0.0};
  if (tok.front() == '(') {
    double re = 0, im = 0;
    char l, c, r;
    std::istringstream num(tok);
    if (!(num >> l >> re >> c >> im >> r) || l != '(' || c != ',' || r != ')')
      throw Error("parse_error", "bad coefficient: " + tok);
    coeff = {re, im};
    if (!(in >> tok)) throw Error("parse_error", "missing phase: " + text);
  }
  int phase_exp;
  if (tok == "+1")
    phase_exp = 0;
  else if (tok == "+i")
    phase_exp = 1;
  else if (tok == "-1")
    phase_exp = 2;
  else if (tok == "-i")
    phase_exp = 3;
  else
    throw Error("parse_error", "bad phase token: " + tok);
  if (!(in >> tok) || tok != "*") throw Error("parse_error", "expected '*': " + text);
  std::uint64_t x = 0, z = 0;
  int y_count = 0;
  while (in >> tok) {
    if (tok == "I") continue;
    if (tok.size() < 2) throw Error("parse_error", "bad factor: " + tok);
    const std::size_t site = std::stoul(tok.substr(1));
    check_site(site, n_sites);
    switch (tok[0]) {
      case 'X': x |= site_bit(site); break;
      case 'Z': z |= site_bit(site); break;
      case 'Y':
        x |= site_bit(site);
        z |= site_bit(site);
        ++y_count;
        break;
      default: throw Error("parse_error", "bad factor: " + tok);
    }
  }
  return PauliString(n_sites, x, z, phase_exp + y_count, coeff);
}

PauliSum::PauliSum(std::size_t n_sites, std::vector<PauliString> terms)
    : n_sites_(n_sites), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.n_sites() != n_sites_) throw Error("dimension_mismatch", "term site count mismatch");
}

PauliSum& PauliSum::add(const PauliString& term) {
  if (term.n_sites() != n_sites_) throw Error("dimension_mismatch", "term site count mismatch");
  terms_.push_back(term);
  return *this;
}

PauliSum& PauliSum::add(const PauliSum& other) {
  for (const auto& t : other.terms()) add(t);
  return *this;
}

PauliSum& PauliSum::add_identity(complex c) {
  return add(PauliString::identity(n_sites_, c));
}

PauliSum PauliSum::canonical(double tol) const {
  std::map<std::pair<std::uint64_t, std::uint64_t>, complex> merged;
  for (const auto& t : terms_)
    merged[{t.x_mask(), t.z_mask()}] += t.coeff() * t.phase();
  PauliSum out(n_sites_);
  for (const auto& [key, c] : merged) {
    if (std::abs(c) <= tol) continue;
    out.terms_.push_back(PauliString(n_sites_, key.first, key.second, 0, c));
  }
  return out;
}

bool PauliSum::is_zero(double tol) const { return canonical(tol).terms_.empty(); }

bool PauliSum::is_hermitian(double tol) const {
  return (*this - spinlab::adjoint(*this)).is_zero(tol);
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  PauliSum out = a;
  out.add(b);
  return out;
}

PauliSum operator-(const PauliSum& a, const PauliSum& b) {
  PauliSum out = a;
  out.add(complex{-1.0, 0.0} * b);
  return out;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_sites() != b.n_sites()) throw Error("dimension_mismatch", "sum site count mismatch");
  PauliSum out(a.n_sites());
  for (const auto& p : a.terms())
    for (const auto& q : b.terms()) out.add(multiply(p, q));
  return out.canonical();
}

PauliSum operator*(complex c, const PauliSum& a) {
  PauliSum out(a.n_sites());
  for (const auto& t : a.terms()) out.add(t.with_coeff(c * t.coeff()));
  return out;
}

PauliSum adjoint(const PauliSum& s) {
  PauliSum out(s.n_sites());
  for (const auto& t : s.terms()) out.add(adjoint(t));
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  return (a * b - b * a).canonical();
}

PauliSum single_site(std::size_t site, PauliKind kind, std::size_t n_sites) {
  PauliSum out(n_sites);
  switch (kind) {
    case PauliKind::X: out.add(pauli_x(site, n_sites)); break;
    case PauliKind::Y: out.add(pauli_y(site, n_sites)); break;
    case PauliKind::Z: out.add(pauli_z(site, n_sites)); break;
    case PauliKind::Plus:
      out.add(pauli_x(site, n_sites));
      out.add(pauli_y(site, n_sites).with_coeff({0, 1}));
      break;
    case PauliKind::Minus:
      out.add(pauli_x(site, n_sites));
      out.add(pauli_y(site, n_sites).with_coeff({0, -1}));
      break;
  }
  return out;
}

}  // namespace spinlab
