#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dnls/config.hpp"
#include "dnls/field.hpp"

namespace dnls {

// Time-ordered slices on one domain with a uniform step.
struct Trajectory {
  std::vector<double> times;
  std::vector<GridFunction> slices;
  std::optional<SolverConfig> config;
  std::vector<double> mass;  // ||u(t)||_{L2}^2 per slice

  const Domain& domain() const { return slices.front().domain; }
  std::size_t size() const noexcept { return slices.size(); }
  double dt() const;

  // Checks non-empty, equal domains, strictly increasing uniform times.
  void validate() const;
  // Recomputes `mass` from the slices.
  void refresh_mass();
};

// max_t | ||u(t)||_{L2} - ||u(0)||_{L2} | / ||u(0)||_{L2}.
double relative_mass_drift(const Trajectory& traj);

// Coefficients on the (xi, tau) lattice, row-major [tau index][xi index],
// both axes in FFT order. The time samples were t_m = t0 + m dt with M odd,
// so the tau lattice l * dtau, |l| <= (M-1)/2, is symmetric about zero,
// dtau = 2 pi / (M dt) and the grid resolves |tau| < pi / dt.
struct SpaceTimeField {
  Domain domain;
  std::size_t n_times = 0;
  double dt = 0.0;
  double t0 = 0.0;
  std::vector<Complex> coeffs;
  std::string window;  // description of the time window used, if any

  SpaceTimeField(Domain d, std::size_t m, double dt_, double t0_,
                 std::vector<Complex> c, std::string window_desc = {});
  static SpaceTimeField zeros(const Domain& d, std::size_t m, double dt,
                              double t0);

  double dtau() const noexcept;
  double tau(std::size_t m) const noexcept;
  std::optional<std::size_t> tau_index_of(long l) const noexcept;
  Complex& at(std::size_t tau_index, std::size_t xi_index) {
    return coeffs[tau_index * domain.size() + xi_index];
  }
  Complex at(std::size_t tau_index, std::size_t xi_index) const {
    return coeffs[tau_index * domain.size() + xi_index];
  }
};

// u_hat(xi, tau) = (dx dt / 2 pi) sum_{j,m} e^{-i(x_j xi + t_m tau)} u(x_j, t_m).
// Samples are row-major [time][space].
SpaceTimeField space_time_transform(const Domain& d, std::size_t n_times,
                                    double dt, double t0,
                                    const std::vector<Complex>& samples);
// Inverse of space_time_transform, returns row-major [time][space] samples.
std::vector<Complex> space_time_samples(const SpaceTimeField& u);

SpaceTimeField conjugate(const SpaceTimeField& u);

// ||u||_{L2_{t,x}} from the coefficients (Plancherel with dxi dtau).
double l2_norm(const SpaceTimeField& u);

}  // namespace dnls
