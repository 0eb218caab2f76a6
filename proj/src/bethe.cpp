#include "spinlab/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "spinlab/eigensolver.hpp"

namespace spinlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularSin = 1e-9;  // |sin(k/2)| below this: cot blows up

double cot_half(double k) {
  const double s = std::sin(k / 2);
  if (std::abs(s) < kSingularSin)
    throw Error("singular_momentum", "cot(k/2) singular at k = " + std::to_string(k));
  return std::cos(k / 2) / s;
}

bool near_singular(std::span<const double> ks) {
  return std::any_of(ks.begin(), ks.end(),
                     [](double k) { return std::abs(std::sin(k / 2)) < kSingularSin; });
}

// theta and its partial derivatives; theta(kj, ki) = -2 atan2(2, cj - ci)
double theta_of(double kj, double ki) {
  return wrap_angle(-2 * std::atan2(2.0, cot_half(kj) - cot_half(ki)));
}

struct ThetaDeriv {
  double d_ki, d_kj;
};

ThetaDeriv theta_deriv(double kj, double ki) {
  const double ci = cot_half(ki), cj = cot_half(kj);
  const double d = cj - ci;
  const double den = d * d + 4;
  return {2 * (1 + ci * ci) / den, -2 * (1 + cj * cj) / den};
}

double max_abs(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double wrap_angle(double x) {
  x = std::fmod(x, 2 * kPi);
  if (x <= -kPi) x += 2 * kPi;
  if (x > kPi) x -= 2 * kPi;
  return x;
}

ScatteringPhase scattering_phase(double k, double kp) {
  const double d = cot_half(k) - cot_half(kp);
  const complex a = complex{d, -2.0} / complex{d, 2.0};
  ScatteringPhase out;
  out.k1 = k;
  out.k2 = kp;
  out.a = a;
  out.theta = wrap_angle(-2 * std::atan2(2.0, d));
  return out;
}

std::vector<double> quantization_residual(std::span<const double> roots, std::size_t n) {
  const std::size_t m = roots.size();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    double rhs = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) rhs += theta_of(roots[j], roots[i]);
    out[i] = wrap_angle(static_cast<double>(n) * roots[i] - rhs);
  }
  return out;
}

BetheRootSet solve_bethe(std::size_t n, std::vector<int> qn, const BetheOptions& opts) {
  const std::size_t m = qn.size();
  if (m == 0) throw Error("invalid_argument", "need at least one quantum number");
  if (m > n / 2) throw Error("invalid_argument", "solver scope is M <= N/2");
  for (int q : qn)
    if (q < 0 || static_cast<std::size_t>(q) >= n)
      throw Error("invalid_argument", "quantum number out of [0, N)");

  BetheRootSet out;
  out.n_sites = n;
  out.quantum_numbers = qn;
  out.momenta.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    out.momenta[i] = 2 * kPi * static_cast<double>(qn[i]) / static_cast<double>(n);

  auto finish_energy = [&] {
    out.energy = 0;
    for (double k : out.momenta) {
      const double s = std::sin(k / 2);
      out.energy += opts.b + 2 * opts.j * s * s;
    }
  };

  if (m == 1) {  // empty scattering sum: free momentum is exact
    out.residuals = {0.0};
    out.status = BetheStatus::converged;
    finish_energy();
    return out;
  }

  // all quantum numbers zero: the k = k' = 0 ansatz vector vanishes
  if (std::all_of(qn.begin(), qn.end(), [](int q) { return q == 0; })) {
    out.status = BetheStatus::coincident;
    return out;
  }

  // nudge coincident starting momenta off the diagonal
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(out.momenta[i] - out.momenta[j]) < 1e-12)
        out.momenta[i] += 1e-6 * static_cast<double>(i + 1);

  auto& k = out.momenta;
  std::vector<double> f;
  try {
    if (near_singular(k)) throw Error("singular_momentum", "initial guess at cot singularity");
    f = quantization_residual(k, n);
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
      if (max_abs(f) < opts.tol) {
        out.residuals = f;
        out.status = BetheStatus::converged;
        break;
      }
      Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
      for (std::size_t i = 0; i < m; ++i) {
        jac(i, i) = static_cast<double>(n);
        for (std::size_t j = 0; j < m; ++j) {
          if (j == i) continue;
          const ThetaDeriv d = theta_deriv(k[j], k[i]);
          jac(i, i) -= d.d_ki;
          jac(i, j) -= d.d_kj;
        }
      }
      Eigen::Map<Eigen::VectorXd> fv(f.data(), static_cast<Eigen::Index>(m));
      const Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
      if (!lu.isInvertible()) {
        out.status = BetheStatus::no_convergence;
        break;
      }
      const Eigen::VectorXd step = lu.solve(fv);
      // damped step: halve until the residual shrinks
      double lambda = 1.0;
      bool accepted = false;
      const double f0 = max_abs(f);
      for (int h = 0; h < 50; ++h, lambda /= 2) {
        std::vector<double> trial(m);
        for (std::size_t i = 0; i < m; ++i)
          trial[i] = k[i] - lambda * step(static_cast<Eigen::Index>(i));
        if (near_singular(trial)) continue;
        std::vector<double> ftrial = quantization_residual(trial, n);
        if (max_abs(ftrial) < f0) {
          k = std::move(trial);
          f = std::move(ftrial);
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        out.status = BetheStatus::no_convergence;
        break;
      }
    }
    if (out.status != BetheStatus::converged && out.status != BetheStatus::no_convergence)
      out.status = BetheStatus::no_convergence;
  } catch (const Error& e) {
    if (e.kind() != "singular_momentum") throw;
    out.status = BetheStatus::singular;
    return out;
  }

  if (out.status == BetheStatus::converged) {
    // a converged iterate at a zero momentum or a coincident pair is the
    // degenerate (vanishing-vector) branch, not a scattering state
    if (near_singular(k)) {
      out.status = BetheStatus::singular;
    } else {
      for (std::size_t i = 0; i < m && out.status == BetheStatus::converged; ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (std::abs(wrap_angle(k[i] - k[j])) < 1e-8) {
            out.status = BetheStatus::coincident;
            break;
          }
    }
  }
  if (out.status == BetheStatus::converged) finish_energy();
  return out;
}

Eigen::VectorXcd two_magnon_state(const SectorBasis& basis, double k, double kp, complex a) {
  if (basis.sector().magnons != 2)
    throw Error("invalid_argument", "two_magnon_state needs an M=2 basis");
  const std::size_t n = basis.n_sites();
  if (n < 4) throw Error("invalid_argument", "need at least 4 sites");
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    const BasisState s = basis.unrank(idx);
    const auto alpha = static_cast<double>(std::countr_zero(s));
    const auto beta = static_cast<double>(63 - std::countl_zero(s));
    const complex e1 = std::exp(complex{0, k * alpha + kp * beta});
    const complex e2 = std::exp(complex{0, kp * alpha + k * beta});
    psi(static_cast<Eigen::Index>(idx)) = e1 + a * e2;
  }
  if (psi.norm() < 1e-12 * std::sqrt(static_cast<double>(basis.size())))
    throw Error("degenerate_state", "ansatz vector vanishes (coincident momenta with A = -1)");
  return psi;
}

BetheSweepReport bethe_sweep(std::size_t n, std::size_t magnons, const BetheOptions& opts,
                             double match_tol) {
  if (magnons == 0 || magnons > n / 2)
    throw Error("invalid_argument", "sweep scope is 1 <= M <= N/2");
  BetheSweepReport rep;
  rep.n_sites = n;
  rep.magnons = magnons;

  const SectorBasis basis = SectorBasis::fixed_magnons(n, static_cast<int>(magnons));
  const OperatorMatrix hmat =
      assemble(build_hamiltonian({n, opts.j, opts.b, Boundary::periodic}), basis);
  rep.sector_spectrum = spectrum(hmat, -1, 1e-10).eigenvalues;

  // enumerate quantum-number multisets m_1 <= ... <= m_M
  std::vector<int> qn(magnons, 0);
  std::set<std::vector<double>> seen;  // rounded sorted momenta, to deduplicate
  auto record = [&](const BetheRootSet& roots) {
    if (!roots.converged()) return;
    std::vector<double> key(roots.momenta);
    std::sort(key.begin(), key.end());
    for (double& x : key) x = std::round(x * 1e9) / 1e9;
    if (!seen.insert(key).second) return;
    BetheSweepEntry entry;
    entry.roots = roots;
    const auto it = std::min_element(
        rep.sector_spectrum.begin(), rep.sector_spectrum.end(),
        [&](double x, double y) { return std::abs(x - roots.energy) < std::abs(y - roots.energy); });
    if (it != rep.sector_spectrum.end() && std::abs(*it - roots.energy) <= match_tol)
      entry.matched_ed = *it;
    if (magnons == 2) {
      const auto phase = scattering_phase(roots.momenta[0], roots.momenta[1]);
      const Eigen::VectorXcd psi =
          two_magnon_state(basis, roots.momenta[0], roots.momenta[1], phase.a);
      entry.state_residual = (hmat.apply(psi) - roots.energy * psi).norm() / psi.norm();
    }
    rep.entries.push_back(std::move(entry));
  };

  std::function<void(std::size_t, int)> sweep = [&](std::size_t pos, int lo) {
    if (pos == magnons) {
      record(solve_bethe(n, qn, opts));
      return;
    }
    for (int m = lo; m < static_cast<int>(n); ++m) {
      qn[pos] = m;
      sweep(pos + 1, m);
    }
  };
  sweep(0, 0);

  std::size_t matched = 0;
  for (double level : rep.sector_spectrum) {
    const bool hit = std::any_of(rep.entries.begin(), rep.entries.end(), [&](const auto& e) {
      return std::abs(e.roots.energy - level) <= match_tol;
    });
    if (hit)
      ++matched;
    else
      rep.unmatched_levels.push_back(level);
  }
  rep.coverage = static_cast<double>(matched) / static_cast<double>(rep.sector_spectrum.size());
  return rep;
}

}  // namespace spinlab
