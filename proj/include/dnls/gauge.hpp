#pragma once

// Gauge transforms G (line) and the torus variant with mean correction and
// the x - 2 mu t translation along trajectories.

#include <optional>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/spacetime.hpp"

namespace dnls {

// mu(f) = ||f||^2 / (2 pi), torus only.
double mass_density_mean(const GridFunction& f);

struct GaugePhase {
  Domain domain;
  std::vector<double> values;  // phase at the grid points
  std::optional<double> mu;    // torus only
  // Phase gained across one period: 0 on the torus, ||f||^2 on the line
  // (the value of J at the right edge of the box).
  double increment = 0.0;
};

// Torus: zero-mean spectral antiderivative of |f|^2 - mu.
// Line: J(x) = integral of |f|^2 from the left edge x0 to x; the constant
// part integrates to a ramp, the zero-mean remainder spectrally.
GaugePhase gauge_phase(const GridFunction& f);

GridFunction gauge_forward(const GridFunction& f);
// The phase depends on |f| = |g| only, so the inverse multiplies by e^{+i phase(g)}.
GridFunction gauge_inverse(const GridFunction& g);

// g(x - shift) via the Fourier phase e^{-i shift xi}.
GridFunction translate(const GridFunction& g, double shift);

// Torus: slice-wise gauge then translation by 2 mu t, mu taken from the first
// slice. Throws ConservationError if mu(u(t)) drifts by more than tol.
// Line: slice-wise gauge.
Trajectory gauge_trajectory(const Trajectory& traj, double tol = 1e-8);
Trajectory gauge_trajectory_inverse(const Trajectory& traj, double tol = 1e-8);

// psi(v) = <2 Im(v d_x conj v) - |v|^4 / 2> + mu(v)^2, torus only.
double psi_functional(const GridFunction& v);

struct GaugeReport {
  double round_trip_error = 0.0;  // max |G^{-1}(G f) - f|
  double modulus_error = 0.0;     // max ||G f| - |f||
  double mu_drift = 0.0;          // max_t |mu(u(t)) - mu(u(0))|, torus trajectories
};

GaugeReport gauge_report(const GridFunction& f);
// Includes mu drift when the trajectory lives on the torus.
GaugeReport gauge_report(const Trajectory& traj);

}  // namespace dnls
