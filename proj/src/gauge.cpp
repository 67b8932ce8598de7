#include "dnls/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dnls/dealias.hpp"
#include "dnls/error.hpp"
#include "dnls/fft.hpp"
#include "dnls/parallel.hpp"

namespace dnls {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Zero-mean periodic antiderivative of a zero-mean real grid function.
std::vector<double> periodic_antiderivative(const Domain& d,
                                            const std::vector<double>& h) {
  const std::size_t n = d.size();
  std::vector<Complex> in(h.begin(), h.end()), c(n), out(n);
  fft::forward(in, c);
  for (std::size_t k = 0; k < n; ++k) {
    const long m = d.wavenumber(k);
    if (m == 0 || m == -static_cast<long>(n / 2)) c[k] = 0.0;
    else c[k] /= Complex(0.0, d.frequency(k)) * static_cast<double>(n);
  }
  fft::backward(c, out);
  std::vector<double> r(n);
  for (std::size_t j = 0; j < n; ++j) r[j] = out[j].real();
  return r;
}

GridFunction apply_phase(const GridFunction& f, const GaugePhase& p, double sign) {
  GridFunction out = f;
  for (std::size_t j = 0; j < out.values.size(); ++j)
    out.values[j] *= std::polar(1.0, sign * p.values[j]);
  return out;
}

void require_torus(const GridFunction& f, const char* what) {
  if (!f.domain.is_torus())
    throw DomainError(std::string(what) + " is only defined on the torus");
}

double check_mu(const Trajectory& traj, double tol) {
  const double mu0 = mass_density_mean(traj.slices.front());
  double drift = 0.0;
  for (const auto& s : traj.slices)
    drift = std::max(drift, std::abs(mass_density_mean(s) - mu0));
  if (drift > tol * std::max(1.0, mu0))
    throw ConservationError("mu drifts by " + std::to_string(drift) +
                            " along the trajectory (tolerance " +
                            std::to_string(tol) + ")");
  return mu0;
}

}  // namespace

double mass_density_mean(const GridFunction& f) {
  require_torus(f, "mass_density_mean");
  const double n = l2_norm(f);
  return n * n / kTwoPi;
}

GaugePhase gauge_phase(const GridFunction& f) {
  const Domain& d = f.domain;
  const std::size_t n = d.size();
  std::vector<double> a2(n);
  double mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    a2[j] = std::norm(f.values[j]);
    mean += a2[j];
  }
  mean /= static_cast<double>(n);
  for (auto& v : a2) v -= mean;
  std::vector<double> phase = periodic_antiderivative(d, a2);
  if (d.is_torus()) return GaugePhase{d, std::move(phase), mean, 0.0};
  const double p0 = phase.front();
  for (std::size_t j = 0; j < n; ++j)
    phase[j] += mean * (d.x(j) - d.origin()) - p0;
  return GaugePhase{d, std::move(phase), std::nullopt, mean * d.period()};
}

GridFunction gauge_forward(const GridFunction& f) {
  return apply_phase(f, gauge_phase(f), -1.0);
}

GridFunction gauge_inverse(const GridFunction& g) {
  return apply_phase(g, gauge_phase(g), 1.0);
}

GridFunction translate(const GridFunction& g, double shift) {
  if (shift == 0.0) return g;
  SpectralField c = to_spectral(g);
  for (std::size_t k = 0; k < c.coeffs.size(); ++k)
    c.coeffs[k] *= std::polar(1.0, -shift * c.domain.frequency(k));
  return to_grid(c);
}

Trajectory gauge_trajectory(const Trajectory& traj, double tol) {
  traj.validate();
  const bool torus = traj.domain().is_torus();
  const double mu = torus ? check_mu(traj, tol) : 0.0;
  Trajectory out = traj;
  out.slices = parallel_map(traj.size(), [&](std::size_t m) {
    GridFunction g = gauge_forward(traj.slices[m]);
    return torus ? translate(g, 2.0 * mu * traj.times[m]) : g;
  });
  out.refresh_mass();
  return out;
}

Trajectory gauge_trajectory_inverse(const Trajectory& traj, double tol) {
  traj.validate();
  const bool torus = traj.domain().is_torus();
  const double mu = torus ? check_mu(traj, tol) : 0.0;
  Trajectory out = traj;
  out.slices = parallel_map(traj.size(), [&](std::size_t m) {
    const GridFunction& v = traj.slices[m];
    return gauge_inverse(torus ? translate(v, -2.0 * mu * traj.times[m]) : v);
  });
  out.refresh_mass();
  return out;
}

double psi_functional(const GridFunction& v) {
  require_torus(v, "psi_functional");
  PaddedGrid grid(v.domain, 4);
  const auto s = grid.lift(v);
  const auto ds = grid.lift_derivative(v);
  std::vector<Complex> integrand(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double a2 = std::norm(s[j]);
    integrand[j] = 2.0 * std::imag(s[j] * std::conj(ds[j])) - 0.5 * a2 * a2;
  }
  const double mu = mass_density_mean(v);
  return PaddedGrid::mean(integrand).real() + mu * mu;
}

GaugeReport gauge_report(const GridFunction& f) {
  const GridFunction g = gauge_forward(f);
  GaugeReport r;
  r.round_trip_error = max_abs_difference(gauge_inverse(g), f);
  for (std::size_t j = 0; j < f.values.size(); ++j)
    r.modulus_error =
        std::max(r.modulus_error, std::abs(std::abs(g.values[j]) - std::abs(f.values[j])));
  return r;
}

GaugeReport gauge_report(const Trajectory& traj) {
  traj.validate();
  GaugeReport r;
  for (const auto& s : traj.slices) {
    const GaugeReport one = gauge_report(s);
    r.round_trip_error = std::max(r.round_trip_error, one.round_trip_error);
    r.modulus_error = std::max(r.modulus_error, one.modulus_error);
  }
  if (traj.domain().is_torus()) {
    const double mu0 = mass_density_mean(traj.slices.front());
    for (const auto& s : traj.slices)
      r.mu_drift = std::max(r.mu_drift, std::abs(mass_density_mean(s) - mu0));
  }
  return r;
}

}  // namespace dnls
