#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinlab/basis.hpp"
#include "spinlab/chain.hpp"

namespace spinlab {

/// Two-magnon scattering phase A = exp(i theta(k, k')).
struct ScatteringPhase {
  double k1 = 0, k2 = 0;
  complex a;
  double theta = 0;  // principal value in (-pi, pi]
};

/// A = (cot(k/2) - cot(k'/2) - 2i) / (cot(k/2) - cot(k'/2) + 2i).
/// Errors with kind "singular_momentum" at the cotangent singularity.
ScatteringPhase scattering_phase(double k, double kp);

/// Wrap into (-pi, pi].
double wrap_angle(double x);

enum class BetheStatus { converged, no_convergence, coincident, singular };

struct BetheRootSet {
  std::size_t n_sites = 0;
  std::vector<int> quantum_numbers;
  std::vector<double> momenta;    // final iterate, converged or not
  std::vector<double> residuals;  // wrapped quantization violations
  double energy = 0;
  BetheStatus status = BetheStatus::no_convergence;
  bool converged() const noexcept { return status == BetheStatus::converged; }
};

struct BetheOptions {
  double tol = 1e-12;
  std::size_t max_iter = 200;
  double j = 1.0;
  double b = 0.0;
};

/// Per-root wrapped violation of k_i N = sum_{j != i} theta(k_j, k_i).
std::vector<double> quantization_residual(std::span<const double> roots, std::size_t n_sites);

/// Damped Newton on the wrapped quantization conditions, starting from
/// the free momenta 2 pi m_i / N. Covers any magnon number M <= N/2;
/// M = 1 is exact immediately. Real-root non-existence is reported via
/// status, never guessed.
BetheRootSet solve_bethe(std::size_t n_sites, std::vector<int> quantum_numbers,
                         const BetheOptions& opts = {});

inline BetheRootSet solve_two_magnon(std::size_t n, int m1, int m2,
                                     const BetheOptions& opts = {}) {
  return solve_bethe(n, {m1, m2}, opts);
}

/// The ansatz vector sum_{a<b} (e^{i(k a + k' b)} + A e^{i(k' a + k b)}) |ab>
/// over the M=2 sector basis. Errors on an identically-zero vector.
Eigen::VectorXcd two_magnon_state(const SectorBasis& basis, double k, double kp, complex a);

struct BetheSweepEntry {
  BetheRootSet roots;
  std::optional<double> matched_ed;  // nearest sector eigenvalue within match_tol
  double state_residual = 0;         // relative H-eigenvector residual (M=2 only)
};

struct BetheSweepReport {
  std::size_t n_sites = 0;
  std::size_t magnons = 0;
  std::vector<BetheSweepEntry> entries;      // converged, deduplicated root sets
  std::vector<double> sector_spectrum;       // ED oracle
  std::vector<double> unmatched_levels;      // bound-state candidates
  double coverage = 0;                       // matched levels / sector dimension
};

/// Sweep all quantum-number multisets, solve, and cross-validate every
/// converged root set against the M-magnon sector ED spectrum.
BetheSweepReport bethe_sweep(std::size_t n_sites, std::size_t magnons,
                             const BetheOptions& opts = {}, double match_tol = 1e-7);

}  // namespace spinlab
