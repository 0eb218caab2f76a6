#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinlab/basis.hpp"

namespace spinlab {

struct SolverOptions {
  std::size_t dense_threshold = 4096;
  std::uint64_t seed = 0x5eed5eedULL;  // deterministic Lanczos start vector
  std::size_t max_subspace = 400;
  double cluster_tol = 1e-8;
};

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  int requested = 0;                // -1 means full spectrum
  double residual_bound = 0.0;      // max ||m v - lambda v|| / ||m||
  int ground_degeneracy = 1;
  double gap = 0.0;
  bool gapless_at_this_size = false;  // whole spectrum in one cluster
  bool dense = true;
};

struct EigenSolution {
  std::vector<double> eigenvalues;
  Eigen::MatrixXcd eigenvectors;  // one column per reported eigenvalue
  double residual_bound = 0.0;
  bool dense = true;
};

/// Lowest-k (or full, k = -1) eigenpairs of a Hermitian OperatorMatrix.
/// Dense solve below dense_threshold, Lanczos with full
/// reorthogonalization above it.
EigenSolution eigensystem(const OperatorMatrix& m, int k, double tol = 1e-10,
                          const SolverOptions& opts = {});

SpectrumReport spectrum(const OperatorMatrix& m, int k, double tol = 1e-10,
                        const SolverOptions& opts = {});

/// Ground cluster size and gap above it from a sorted spectrum.
std::pair<int, double> degeneracy_and_gap(std::span<const double> sorted_eigenvalues,
                                          double cluster_tol = 1e-8);

/// Sorted multiset {a_i + b_j}: the spectrum of the Kronecker sum.
std::vector<double> stack_spectra(std::span<const double> a, std::span<const double> b);

}  // namespace spinlab
