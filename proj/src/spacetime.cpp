#include "dnls/spacetime.hpp"

#include <cmath>
#include <numbers>

#include "dnls/error.hpp"
#include "dnls/fft.hpp"

namespace dnls {
namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double Trajectory::dt() const {
  return times.size() < 2 ? 0.0 : times[1] - times[0];
}

void Trajectory::validate() const {
  if (slices.empty()) throw ParameterError("trajectory is empty");
  if (times.size() != slices.size())
    throw ParameterError("trajectory times/slices size mismatch");
  for (const auto& s : slices)
    require_same_domain(s.domain, slices.front().domain, "trajectory");
  if (times.size() < 2) return;
  const double step = times[1] - times[0];
  if (!(step > 0.0)) throw ParameterError("trajectory times must increase");
  for (std::size_t m = 1; m < times.size(); ++m) {
    const double d = times[m] - times[m - 1];
    if (std::abs(d - step) > 1e-9 * std::max(1.0, std::abs(step)))
      throw ParameterError("trajectory times are not uniform");
  }
}

void Trajectory::refresh_mass() {
  mass.clear();
  for (const auto& s : slices) {
    const double n = l2_norm(s);
    mass.push_back(n * n);
  }
}

double relative_mass_drift(const Trajectory& traj) {
  if (traj.slices.empty()) return 0.0;
  const double n0 = l2_norm(traj.slices.front());
  if (n0 == 0.0) return 0.0;
  double drift = 0.0;
  for (const auto& s : traj.slices)
    drift = std::max(drift, std::abs(l2_norm(s) - n0) / n0);
  return drift;
}

SpaceTimeField::SpaceTimeField(Domain d, std::size_t m, double dt_, double t0_,
                               std::vector<Complex> c, std::string window_desc)
    : domain(d), n_times(m), dt(dt_), t0(t0_), coeffs(std::move(c)),
      window(std::move(window_desc)) {
  if (coeffs.size() != domain.size() * n_times)
    throw DomainMismatchError("space-time field size does not match lattice");
  if (!(dt > 0.0)) throw ParameterError("space-time field needs dt > 0");
  if (n_times % 2 == 0)
    throw ParameterError("space-time field needs an odd number of time samples");
}

SpaceTimeField SpaceTimeField::zeros(const Domain& d, std::size_t m, double dt,
                                     double t0) {
  return SpaceTimeField(d, m, dt, t0, std::vector<Complex>(d.size() * m));
}

double SpaceTimeField::dtau() const noexcept {
  return kTwoPi / (static_cast<double>(n_times) * dt);
}

double SpaceTimeField::tau(std::size_t m) const noexcept {
  const auto mm = static_cast<long>(m);
  const auto total = static_cast<long>(n_times);
  const long l = mm < (total + 1) / 2 ? mm : mm - total;
  return dtau() * static_cast<double>(l);
}

std::optional<std::size_t> SpaceTimeField::tau_index_of(long l) const noexcept {
  const auto total = static_cast<long>(n_times);
  const long lo = -(total / 2);
  const long hi = (total + 1) / 2;  // exclusive
  if (l < lo || l >= hi) return std::nullopt;
  return static_cast<std::size_t>(l >= 0 ? l : l + total);
}

SpaceTimeField space_time_transform(const Domain& d, std::size_t n_times,
                                    double dt, double t0,
                                    const std::vector<Complex>& samples) {
  const std::size_t n = d.size();
  if (samples.size() != n * n_times)
    throw DomainMismatchError("space-time samples size mismatch");
  std::vector<Complex> c(samples.size());
  fft::forward_2d(n_times, n, samples, c);
  SpaceTimeField u(d, n_times, dt, t0, std::move(c));
  const double scale = d.dx() * dt / kTwoPi;
  const double x0 = d.origin();
  for (std::size_t m = 0; m < n_times; ++m) {
    const double tau = u.tau(m);
    for (std::size_t k = 0; k < n; ++k) {
      const double phase = -(x0 * d.frequency(k) + t0 * tau);
      u.at(m, k) *= scale * std::polar(1.0, phase);
    }
  }
  return u;
}

std::vector<Complex> space_time_samples(const SpaceTimeField& u) {
  const Domain& d = u.domain;
  const std::size_t n = d.size();
  std::vector<Complex> c(u.coeffs);
  const double scale = d.dxi() * u.dtau() / kTwoPi;
  const double x0 = d.origin();
  for (std::size_t m = 0; m < u.n_times; ++m) {
    const double tau = u.tau(m);
    for (std::size_t k = 0; k < n; ++k) {
      const double phase = x0 * d.frequency(k) + u.t0 * tau;
      c[m * n + k] *= scale * std::polar(1.0, phase);
    }
  }
  std::vector<Complex> out(c.size());
  fft::backward_2d(u.n_times, n, c, out);
  return out;
}

SpaceTimeField conjugate(const SpaceTimeField& u) {
  const std::size_t n = u.domain.size();
  const std::size_t mt = u.n_times;
  std::vector<Complex> c(u.coeffs.size());
  for (std::size_t m = 0; m < mt; ++m)
    for (std::size_t k = 0; k < n; ++k)
      c[m * n + k] = std::conj(u.coeffs[((mt - m) % mt) * n + (n - k) % n]);
  return SpaceTimeField(u.domain, mt, u.dt, u.t0, std::move(c), u.window);
}

double l2_norm(const SpaceTimeField& u) {
  double sum = 0.0;
  for (auto z : u.coeffs) sum += std::norm(z);
  return std::sqrt(u.domain.dxi() * u.dtau() * sum);
}

}  // namespace dnls
