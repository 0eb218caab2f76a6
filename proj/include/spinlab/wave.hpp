#pragma once

#include <cstddef>
#include <vector>

namespace spinlab {

struct LatticeWaveParams {
  double a = 1.0;       // lattice spacing
  std::size_t n = 2;    // site count (periodic ring)
};

/// omega(k) = (2/a) |sin(ka/2)|.
double discrete_dispersion(double k, double a);

/// Momenta {2 pi m / (N a)} with m = -floor(N/2)+1 .. floor(N/2), all
/// inside the cutoff zone (-pi/a, pi/a].
std::vector<double> allowed_momenta(std::size_t n, double a);

struct WaveRun {
  double measured_omega = 0;
  double energy_drift = 0;  // relative |E(t) - E(0)| max over the run
  std::size_t steps = 0;
};

/// Leapfrog integration of the discretized wave equation from a real
/// plane-wave initial condition; the oscillation frequency of site 0 is
/// extracted by a zero-crossing-seeded least-squares sinusoid fit.
WaveRun integrate_lattice_wave(const LatticeWaveParams& p, double k, double t_final, double dt);

struct LandauParams {
  double tau = 0;
  double tau_c = 0;
  double lambda = 1;  // quartic coefficient, > 0
};

/// Numeric minimizer over phi >= 0 of the symmetric quartic free energy
/// whose equilibrium is phi0 = sqrt((tau_c - tau)/lambda) below tau_c
/// and 0 above (bracketing + golden section, then Newton polish).
double landau_equilibrium(const LandauParams& p);

}  // namespace spinlab
