#pragma once

// Time evolution of i u_t + u_xx = F(u) with F from nonlinear.hpp.
// On the Fourier side u_hat' = -i xi^2 u_hat - i F(u)^, and the stiff linear
// part is integrated exactly by the exponential integrators.

#include <cstddef>
#include <string>
#include <vector>

#include "dnls/config.hpp"
#include "dnls/field.hpp"
#include "dnls/spacetime.hpp"

namespace dnls {

// (U_t f)^(xi) = e^{-i t xi^2} f^(xi)
SpectralField linear_propagate(const SpectralField& f, double t);
GridFunction linear_propagate(const GridFunction& f, double t);

// Marches from t = 0 in cfg.direction. Backward runs are stored in
// increasing time order, ending at t = 0. Throws BlowUpError on NaN or when
// ||u||_inf exceeds 1e6 ||u0||_inf, DomainError when line data does not
// decay to 1e-10 at the box edges.
Trajectory solve(const GridFunction& u0, const SolverConfig& cfg);
// Backward and forward marches joined at t = 0, covering [-T, T].
Trajectory solve_two_sided(const GridFunction& u0, const SolverConfig& cfg);

// U_t u0 sampled on the solver time grid of cfg.
Trajectory free_trajectory(const GridFunction& u0, const SolverConfig& cfg);

// int_0^t U_{t-t'} w(t') dt' by the composite trapezoid rule over the slices
// of w between 0 and t. Both must be slice times of w, else RangeError.
GridFunction duhamel_apply(const Trajectory& w, double t);

struct PicardResult {
  Trajectory iterate;
  std::vector<double> differences;  // ||v^(m+1) - v^(m)||_{C_T L2}
  std::vector<double> ratios;       // successive difference ratios
  bool diverged = false;            // ratio >= 1 three times in a row
  std::string norm = "C_T L2";
};

// v^(m+1)(t) = U_t u0 + int_0^t U_{t-t'} (-i F(v^(m)(t'))) dt', starting
// from v^(0) = U_t u0 on the time grid of cfg.
PicardResult picard_iterate(const GridFunction& u0, const SolverConfig& cfg,
                            int n_iter);

// u_sigma(x, t) = sigma^{-1/2} u(x / sigma, t / sigma^2) on the box enlarged
// by sigma: same samples scaled by sigma^{-1/2}, times scaled by sigma^2.
// Line only; sigma a power of two.
Trajectory rescale(const Trajectory& traj, std::size_t sigma);
GridFunction rescale(const GridFunction& f, std::size_t sigma);

}  // namespace dnls
