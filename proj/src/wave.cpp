#include "spinlab/wave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinlab/error.hpp"

namespace spinlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_wave(const LatticeWaveParams& p) {
  if (p.a <= 0) throw Error("invalid_argument", "lattice spacing must be positive");
  if (p.n < 2) throw Error("invalid_argument", "need at least 2 sites");
}

// least-squares misfit of samples against a*cos(w t) + b*sin(w t)
double sinusoid_misfit(const std::vector<double>& q, double dt, double w) {
  double cc = 0, cs = 0, ss = 0, qc = 0, qs = 0, qq = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double t = dt * static_cast<double>(i);
    const double c = std::cos(w * t), s = std::sin(w * t);
    cc += c * c;
    cs += c * s;
    ss += s * s;
    qc += q[i] * c;
    qs += q[i] * s;
    qq += q[i] * q[i];
  }
  const double det = cc * ss - cs * cs;
  if (std::abs(det) < 1e-14) {  // w ~ 0: only the cosine basis survives
    return cc > 1e-14 ? qq - qc * qc / cc : qq;
  }
  const double a = (ss * qc - cs * qs) / det;
  const double b = (cc * qs - cs * qc) / det;
  return qq - (a * qc + b * qs);
}

double refine_frequency(const std::vector<double>& q, double dt, double w0) {
  // golden-section on the misfit around the zero-crossing estimate
  double lo = std::max(0.0, 0.8 * w0), hi = 1.2 * w0 + 1e-12;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = sinusoid_misfit(q, dt, x1), f2 = sinusoid_misfit(q, dt, x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, w0); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = sinusoid_misfit(q, dt, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = sinusoid_misfit(q, dt, x2);
    }
  }
  return (lo + hi) / 2;
}

}  // namespace

double discrete_dispersion(double k, double a) {
  if (a <= 0) throw Error("invalid_argument", "lattice spacing must be positive");
  return 2.0 / a * std::abs(std::sin(k * a / 2));
}

std::vector<double> allowed_momenta(std::size_t n, double a) {
  if (a <= 0) throw Error("invalid_argument", "lattice spacing must be positive");
  if (n < 2) throw Error("invalid_argument", "need at least 2 sites");
  std::vector<double> out;
  const auto half = static_cast<std::int64_t>(n / 2);
  for (std::int64_t m = -half + 1; m <= half; ++m)
    out.push_back(2 * kPi * static_cast<double>(m) / (static_cast<double>(n) * a));
  return out;
}

WaveRun integrate_lattice_wave(const LatticeWaveParams& p, double k, double t_final, double dt) {
  check_wave(p);
  if (dt <= 0 || t_final <= 0) throw Error("invalid_argument", "need positive dt and t_final");
  if (dt > 0.1 * p.a)
    throw Error("unstable_timestep",
                "dt exceeds the stability margin 0.1*a = " + std::to_string(0.1 * p.a));

  const std::size_t n = p.n;
  const double inv_a2 = 1.0 / (p.a * p.a);
  std::vector<double> q(n), v(n, 0.0), acc(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = std::cos(k * p.a * static_cast<double>(i));

  auto accel = [&](const std::vector<double>& pos) {
    for (std::size_t i = 0; i < n; ++i) {
      const double left = pos[(i + n - 1) % n], right = pos[(i + 1) % n];
      acc[i] = -inv_a2 * (2 * pos[i] - left - right);
    }
  };
  auto energy = [&] {
    double e = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dq = q[(i + 1) % n] - q[i];
      e += 0.5 * v[i] * v[i] + 0.5 * inv_a2 * dq * dq;
    }
    return e;
  };

  const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt));
  std::vector<double> site0;
  site0.reserve(steps + 1);
  site0.push_back(q[0]);
  const double e0 = energy();
  double drift = 0;
  accel(q);
  for (std::size_t s = 0; s < steps; ++s) {
    // kick-drift-kick keeps q and v synchronized at step boundaries
    for (std::size_t i = 0; i < n; ++i) v[i] += 0.5 * dt * acc[i];
    for (std::size_t i = 0; i < n; ++i) q[i] += dt * v[i];
    accel(q);
    for (std::size_t i = 0; i < n; ++i) v[i] += 0.5 * dt * acc[i];
    site0.push_back(q[0]);
    if (e0 != 0) drift = std::max(drift, std::abs(energy() - e0) / std::abs(e0));
  }

  // zero-crossing count seeds the fit
  std::size_t crossings = 0;
  for (std::size_t i = 1; i < site0.size(); ++i)
    if ((site0[i - 1] <= 0) != (site0[i] <= 0)) ++crossings;
  WaveRun out;
  out.steps = steps;
  out.energy_drift = drift;
  if (crossings == 0) {
    out.measured_omega = 0;  // uniform translation mode
    return out;
  }
  const double w0 = kPi * static_cast<double>(crossings) / (dt * static_cast<double>(steps));
  out.measured_omega = refine_frequency(site0, dt, w0);
  return out;
}

double landau_equilibrium(const LandauParams& p) {
  if (!(p.lambda > 0)) throw Error("invalid_argument", "lambda must be positive");
  const double r = p.tau - p.tau_c;
  auto free_energy = [&](double phi) {
    const double phi2 = phi * phi;
    return r * phi2 + 0.5 * p.lambda * phi2 * phi2;
  };
  if (r >= 0) return 0.0;  // single minimum at the origin

  // bracket the broken-symmetry minimum (double until F is increasing),
  // then golden-section
  double hi = 1.0;
  while (2 * r * hi + 2 * p.lambda * hi * hi * hi < 0) {
    hi *= 2;
    if (hi > 1e150) throw Error("no_convergence", "could not bracket the free-energy minimum");
  }
  double lo = 0;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = free_energy(x1), f2 = free_energy(x2);
  for (int it = 0; it < 300 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = free_energy(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = free_energy(x2);
    }
  }
  // Newton polish on dF/dphi = 2 r phi + 2 lambda phi^3
  double phi = (lo + hi) / 2;
  for (int it = 0; it < 60; ++it) {
    const double g = 2 * r * phi + 2 * p.lambda * phi * phi * phi;
    const double h = 2 * r + 6 * p.lambda * phi * phi;
    if (std::abs(h) < 1e-300) break;
    const double next = phi - g / h;
    if (next <= 0) break;
    if (std::abs(next - phi) < 1e-16 * std::max(1.0, phi)) {
      phi = next;
      break;
    }
    phi = next;
  }
  return phi;
}

}  // namespace spinlab
