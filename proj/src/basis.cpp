#include "spinlab/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

namespace spinlab {

namespace {

PauliSum total_sz(std::size_t n) {
  PauliSum sz(n);
  for (std::size_t a = 0; a < n; ++a) sz.add(pauli_z(a, n).with_coeff(0.5));
  return sz;
}

}  // namespace

SectorBasis::SectorBasis(std::size_t n_sites, Sector sector)
    : n_sites_(n_sites), sector_(sector) {
  if (n_sites == 0 || n_sites > PauliString::kMaxSites)
    throw Error("invalid_argument", "n_sites out of range: " + std::to_string(n_sites));
  if (sector.is_all()) {
    if (n_sites > 30)
      throw Error("invalid_argument", "full basis infeasible for n_sites > 30");
    states_.resize(std::size_t{1} << n_sites);
    for (std::size_t s = 0; s < states_.size(); ++s) states_[s] = s;
    return;  // rank is the state value itself
  }
  const int m = sector.magnons;
  if (m < 0 || static_cast<std::size_t>(m) > n_sites)
    throw Error("invalid_argument", "magnon count " + std::to_string(m) +
                                        " invalid for n_sites " + std::to_string(n_sites));
  const BasisState limit =
      n_sites == 64 ? ~BasisState{0} : (BasisState{1} << n_sites) - 1;
  if (m == 0) {
    states_.push_back(0);
  } else {
    // Gosper's hack: next larger integer with the same popcount.
    BasisState s = (BasisState{1} << m) - 1;
    while (s <= limit) {
      states_.push_back(s);
      const BasisState c = s & -s;
      const BasisState r = s + c;
      if (r > limit || r < s) break;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  rank_map_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) rank_map_[states_[i]] = i;
}

std::optional<std::size_t> SectorBasis::rank(BasisState s) const {
  if (sector_.is_all()) {
    if (s >= states_.size()) return std::nullopt;
    return static_cast<std::size_t>(s);
  }
  auto it = rank_map_.find(s);
  if (it == rank_map_.end()) return std::nullopt;
  return it->second;
}

std::pair<complex, BasisState> apply_pauli(const PauliString& p, BasisState s) {
  const int downs = std::popcount(p.z_mask() & ~s);
  const double sign = (downs % 2 == 0) ? 1.0 : -1.0;
  return {p.coeff() * p.phase() * sign, s ^ p.x_mask()};
}

StateMap apply_to_state(const PauliSum& h, const StateMap& psi) {
  StateMap out;
  for (const auto& [s, c] : psi) {
    for (const auto& term : h.terms()) {
      auto [amp, t] = apply_pauli(term, s);
      out[t] += amp * c;
    }
  }
  return out;
}

double state_norm(const StateMap& psi) {
  double sum = 0;
  for (const auto& [s, c] : psi) sum += std::norm(c);
  return std::sqrt(sum);
}

StateMap state_axpy(complex a, const StateMap& x, const StateMap& y) {
  StateMap out = y;
  for (const auto& [s, c] : x) out[s] += a * c;
  return out;
}

OperatorMatrix::OperatorMatrix(SectorBasis basis, std::vector<std::size_t> row_ptr,
                               std::vector<std::size_t> cols, std::vector<complex> values)
    : basis_(std::move(basis)), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)),
      values_(std::move(values)) {
  if (row_ptr_.size() != basis_.size() + 1 || cols_.size() != values_.size())
    throw Error("invalid_argument", "inconsistent sparse structure");
}

void OperatorMatrix::matvec(const complex* x, complex* y) const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    complex acc = 0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) acc += values_[p] * x[cols_[p]];
    y[i] = acc;
  }
}

Eigen::VectorXcd OperatorMatrix::apply(const Eigen::VectorXcd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim())
    throw Error("dimension_mismatch", "matvec size mismatch");
  Eigen::VectorXcd y(x.size());
  matvec(x.data(), y.data());
  return y;
}

Eigen::MatrixXcd OperatorMatrix::to_dense() const {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols_[p])) = values_[p];
  return d;
}

double OperatorMatrix::norm_inf() const {
  double best = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    double row = 0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) row += std::abs(values_[p]);
    best = std::max(best, row);
  }
  return best;
}

bool OperatorMatrix::is_hermitian(double tol) const {
  std::map<std::pair<std::size_t, std::size_t>, complex> entries;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) entries[{i, cols_[p]}] = values_[p];
  for (const auto& [key, v] : entries) {
    auto it = entries.find({key.second, key.first});
    const complex other = it == entries.end() ? complex{0, 0} : it->second;
    if (std::abs(v - std::conj(other)) > tol) return false;
  }
  return true;
}

OperatorMatrix assemble(const PauliSum& h, const SectorBasis& basis, unsigned threads) {
  if (h.n_sites() != basis.n_sites())
    throw Error("dimension_mismatch", "operator/basis site count mismatch");
  if (!basis.sector().is_all()) {
    const PauliSum leak = commutator(h, total_sz(h.n_sites()));
    if (!leak.is_zero(1e-12)) {
      std::string offender = "(cancelling combination)";
      for (const auto& t : h.terms()) {
        PauliSum one(h.n_sites());
        one.add(t);
        if (!commutator(one, total_sz(h.n_sites())).is_zero(1e-12)) {
          offender = t.str();
          break;
        }
      }
      throw Error("sector_violation",
                  "operator does not preserve the magnetization sector", offender);
    }
  }

  const std::size_t n = basis.size();
  const PauliSum hdag = adjoint(h);  // row i of h is (hdag |i>)^dag
  std::vector<std::vector<std::pair<std::size_t, complex>>> rows(n);

  auto work = [&](std::size_t lo, std::size_t hi) {
    std::map<BasisState, complex> acc;
    for (std::size_t i = lo; i < hi; ++i) {
      acc.clear();
      const BasisState s = basis.unrank(i);
      for (const auto& term : hdag.terms()) {
        auto [amp, t] = apply_pauli(term, s);
        acc[t] += amp;
      }
      auto& row = rows[i];
      for (const auto& [t, amp] : acc) {
        const complex v = std::conj(amp);
        if (v == complex{0, 0}) continue;
        if (auto j = basis.rank(t)) {
          row.emplace_back(*j, v);
        } else if (std::abs(v) > 1e-12) {
          throw Error("sector_violation", "uncancelled out-of-sector amplitude",
                      "state " + std::to_string(t));
        }
      }
    }
  };

  if (threads <= 1 || n < 256) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = std::min<std::size_t>(t * chunk, n);
      const std::size_t hi = std::min<std::size_t>(lo + chunk, n);
      if (lo < hi)
        pool.emplace_back([&, lo, hi, t] {
          try {
            work(lo, hi);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<std::size_t> row_ptr(n + 1, 0);
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < n; ++i) {
    row_ptr[i] = nnz;
    nnz += rows[i].size();
  }
  row_ptr[n] = nnz;
  std::vector<std::size_t> cols;
  std::vector<complex> values;
  cols.reserve(nnz);
  values.reserve(nnz);
  for (const auto& row : rows)
    for (const auto& [j, v] : row) {
      cols.push_back(j);
      values.push_back(v);
    }
  return OperatorMatrix(basis, std::move(row_ptr), std::move(cols), std::move(values));
}

Eigen::MatrixXcd to_dense(const PauliSum& h, const SectorBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const BasisState s = basis.unrank(j);
    for (const auto& term : h.terms()) {
      auto [amp, t] = apply_pauli(term, s);
      if (auto i = basis.rank(t))
        d(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(j)) += amp;
    }
  }
  return d;
}

Eigen::MatrixXcd to_dense_full(const PauliSum& h) {
  return to_dense(h, SectorBasis::full(h.n_sites()));
}

}  // namespace spinlab
