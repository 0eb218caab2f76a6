#include "spinlab/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spinlab {

namespace {

EigenSolution dense_solve(const OperatorMatrix& m, int k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.to_dense());
  if (solver.info() != Eigen::Success)
    throw Error("no_convergence", "dense eigensolver failed");
  const auto dim = static_cast<Eigen::Index>(m.dim());
  const Eigen::Index keep = (k < 0) ? dim : std::min<Eigen::Index>(k, dim);
  EigenSolution out;
  out.dense = true;
  out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + keep);
  out.eigenvectors = solver.eigenvectors().leftCols(keep);
  return out;
}

EigenSolution lanczos_solve(const OperatorMatrix& m, int k, double tol,
                            const SolverOptions& opts) {
  const std::size_t n = m.dim();
  const std::size_t want = static_cast<std::size_t>(k);
  const std::size_t max_m = std::min(n, std::max(opts.max_subspace, 2 * want + 20));
  const double scale = std::max(m.norm_inf(), 1e-300);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = complex(gauss(rng), gauss(rng));
  q.normalize();

  std::vector<Eigen::VectorXcd> basis;
  basis.push_back(q);
  std::vector<double> alpha, beta;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  double best_resid = std::numeric_limits<double>::infinity();
  bool breakdown = false;

  auto ritz_converged = [&]() {
    const std::size_t j = alpha.size();
    if (j < want) return false;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(j, j);
    for (std::size_t i = 0; i < j; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < j) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    tri.compute(t);
    if (breakdown || j == n) return true;
    const double b_last = beta.empty() ? 0.0 : beta.back();
    double worst = 0;
    for (std::size_t i = 0; i < want; ++i)
      worst = std::max(worst, std::abs(b_last * tri.eigenvectors()(j - 1, i)));
    best_resid = std::min(best_resid, worst / scale);
    return worst <= tol * scale;
  };

  bool converged = false;
  for (std::size_t j = 0; j < max_m; ++j) {
    Eigen::VectorXcd w = m.apply(basis[j]);
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    const double a = (basis[j].adjoint() * w).value().real();
    alpha.push_back(a);
    w -= a * basis[j];
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : basis) w -= (v.adjoint() * w).value() * v;
    const double b = w.norm();
    if (b < 1e-13 * scale || j + 1 == n) {
      breakdown = true;
      if (ritz_converged()) {
        converged = true;
        break;
      }
      // invariant subspace without enough converged pairs: deflate with
      // a fresh random direction orthogonal to the current basis
      breakdown = false;
      Eigen::VectorXcd r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = complex(gauss(rng), gauss(rng));
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& v : basis) r -= (v.adjoint() * r).value() * v;
      if (r.norm() < 1e-12) break;
      beta.push_back(0.0);
      basis.push_back(r.normalized());
      continue;
    }
    beta.push_back(b);
    basis.push_back(w / b);
    if ((j + 1) % 10 == 0 && ritz_converged()) {
      converged = true;
      break;
    }
  }
  if (!converged && !ritz_converged())
    throw Error("no_convergence",
                "Lanczos did not converge; best residual " + std::to_string(best_resid),
                "subspace " + std::to_string(alpha.size()));

  const std::size_t j = alpha.size();
  EigenSolution out;
  out.dense = false;
  out.eigenvalues.resize(want);
  out.eigenvectors.resize(n, want);
  for (std::size_t i = 0; i < want; ++i) {
    out.eigenvalues[i] = tri.eigenvalues()(static_cast<Eigen::Index>(i));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (std::size_t l = 0; l < j; ++l)
      v += tri.eigenvectors()(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(i)) *
           basis[l];
    out.eigenvectors.col(static_cast<Eigen::Index>(i)) = v.normalized();
  }
  return out;
}

}  // namespace

EigenSolution eigensystem(const OperatorMatrix& m, int k, double tol, const SolverOptions& opts) {
  if (!m.is_hermitian(1e-12))
    throw Error("not_hermitian", "operator matrix is not Hermitian");
  if (m.dim() == 0) throw Error("invalid_argument", "empty matrix");
  if (k < 0 && m.dim() > opts.dense_threshold)
    throw Error("invalid_argument",
                "full spectrum requested above dense threshold " +
                    std::to_string(opts.dense_threshold));
  if (k == 0) throw Error("invalid_argument", "k must be positive or -1 for all");
  EigenSolution out = (k < 0 || m.dim() <= opts.dense_threshold)
                          ? dense_solve(m, k)
                          : lanczos_solve(m, k, tol, opts);
  // explicit residuals for every reported pair
  const double scale = std::max(m.norm_inf(), 1e-300);
  double worst = 0;
  for (std::size_t i = 0; i < out.eigenvalues.size(); ++i) {
    const auto col = out.eigenvectors.col(static_cast<Eigen::Index>(i));
    const double r = (m.apply(col) - out.eigenvalues[i] * col).norm();
    worst = std::max(worst, r / scale);
  }
  out.residual_bound = worst;
  if (out.residual_bound > tol && !out.dense)
    throw Error("no_convergence",
                "residual bound " + std::to_string(out.residual_bound) + " exceeds tolerance");
  return out;
}

SpectrumReport spectrum(const OperatorMatrix& m, int k, double tol, const SolverOptions& opts) {
  EigenSolution sol = eigensystem(m, k, tol, opts);
  SpectrumReport rep;
  rep.eigenvalues = std::move(sol.eigenvalues);
  rep.requested = k;
  rep.residual_bound = sol.residual_bound;
  rep.dense = sol.dense;
  auto [deg, gap] = degeneracy_and_gap(rep.eigenvalues, opts.cluster_tol);
  rep.ground_degeneracy = deg;
  rep.gap = gap;
  rep.gapless_at_this_size = (static_cast<std::size_t>(deg) == rep.eigenvalues.size());
  return rep;
}

std::pair<int, double> degeneracy_and_gap(std::span<const double> ev, double cluster_tol) {
  if (ev.empty()) throw Error("invalid_argument", "empty spectrum");
  const double ground = ev.front();
  std::size_t deg = 1;
  while (deg < ev.size() && ev[deg] - ground <= cluster_tol) ++deg;
  const double gap = (deg == ev.size()) ? 0.0 : ev[deg] - ev[deg - 1];
  return {static_cast<int>(deg), gap};
}

std::vector<double> stack_spectra(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() * b.size());
  for (const double x : a)
    for (const double y : b) out.push_back(x + y);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace spinlab
