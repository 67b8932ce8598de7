#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dnls/error.hpp"
#include "dnls/gauge.hpp"
#include "dnls/sampling.hpp"
#include "dnls/solver.hpp"

using namespace dnls;

namespace {

GridFunction real_field(const std::vector<double>& v, const Domain& d) {
  GridFunction f = GridFunction::zeros(d);
  for (std::size_t j = 0; j < v.size(); ++j) f.values[j] = v[j];
  return f;
}

}  // namespace

TEST_CASE("mu is the mean mass density") {
  const Domain d = Domain::torus(64);
  GridFunction f = GridFunction::zeros(d);
  for (auto& v : f.values) v = Complex(0.0, 2.0);
  CHECK(mass_density_mean(f) == doctest::Approx(4.0));
  CHECK_THROWS_AS(mass_density_mean(GridFunction::zeros(Domain::line(64, 1))), DomainError);
}

TEST_CASE("torus phase differentiates to |f|^2 - mu") {
  Rng rng = make_rng(31, 0);
  const Domain d = Domain::torus(128);
  const GridFunction f = random_smooth_field(d, rng, 6);
  const GaugePhase ph = gauge_phase(f);
  REQUIRE(ph.mu.has_value());
  const GridFunction dphi = to_grid(derivative(to_spectral(real_field(ph.values, d))));
  for (std::size_t j = 0; j < d.size(); ++j)
    CHECK(std::abs(dphi.values[j] - (std::norm(f.values[j]) - *ph.mu)) < 1e-10);
  CHECK(ph.increment == 0.0);
}

TEST_CASE("line phase is the running mass") {
  Rng rng = make_rng(32, 0);
  const Domain d = Domain::line(256, 4);
  const GridFunction f = random_wave_packets(d, rng, 2);
  const GaugePhase ph = gauge_phase(f);
  CHECK_FALSE(ph.mu.has_value());
  CHECK(ph.increment == doctest::Approx(l2_norm(f) * l2_norm(f)).epsilon(1e-10));
  CHECK(std::abs(ph.values.front()) < 1e-10);
  // Trapezoid cumulative integral as a loose independent check.
  double acc = 0.0, worst = 0.0;
  for (std::size_t j = 1; j < d.size(); ++j) {
    acc += 0.5 * d.dx() * (std::norm(f.values[j - 1]) + std::norm(f.values[j]));
    worst = std::max(worst, std::abs(acc - ph.values[j]));
  }
  CHECK(worst < 1e-3 * ph.increment);
}

TEST_CASE("round trip and modulus") {
  Rng rng = make_rng(33, 0);
  for (int i = 0; i < 20; ++i) {
    const Domain d = i % 2 ? Domain::torus(128) : Domain::line(256, 4);
    const GridFunction f = d.is_torus() ? random_smooth_field(d, rng, 8) : random_wave_packets(d, rng, 2);
    const GaugeReport r = gauge_report(f);
    CHECK(r.round_trip_error < 1e-12);
    CHECK(r.modulus_error < 1e-12);
    CHECK(max_abs_difference(gauge_inverse(gauge_forward(f)), f) < 1e-12);
  }
}

TEST_CASE("translate shifts a mode by its phase") {
  const Domain d = Domain::torus(32);
  const GridFunction e = to_grid(SpectralField::unit_mass(d, 3));
  const GridFunction t = translate(e, 0.7);
  for (std::size_t j = 0; j < d.size(); ++j)
    CHECK(std::abs(t.values[j] - e.values[j] * std::exp(Complex(0.0, -2.1))) < 1e-13);
  const GridFunction full = translate(e, 2.0 * std::numbers::pi / 32.0 * 5.0);
  CHECK(std::abs(full.values[5] - e.values[0]) < 1e-13);
}

TEST_CASE("trajectory gauge on the torus") {
  SolverConfig cfg;
  cfg.domain = Domain::torus(64);
  cfg.dt = 1e-3;
  cfg.t_final = 0.02;
  cfg.nonlinearity = {0.0, 1, false};
  Rng rng = make_rng(34, 0);
  const GridFunction u0 = scale_to_sobolev(random_smooth_field(cfg.domain, rng, 4), 1.0, 0.3);
  const Trajectory u = solve(u0, cfg);
  const Trajectory v = gauge_trajectory(u);
  const Trajectory back = gauge_trajectory_inverse(v);
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) err = std::max(err, max_abs_difference(back.slices[i], u.slices[i]));
  CHECK(err < 1e-11);
  const double mu = mass_density_mean(u0);
  const double t = u.times.back();
  const GridFunction want = translate(gauge_forward(u.slices.back()), 2.0 * mu * t);
  CHECK(max_abs_difference(v.slices.back(), want) < 1e-12);
  CHECK(gauge_report(u).mu_drift < 1e-12);
}

TEST_CASE("drifting mu is rejected") {
  const Domain d = Domain::torus(32);
  Trajectory t;
  t.times = {0.0, 0.1};
  GridFunction a = to_grid(SpectralField::unit_mass(d, 1));
  t.slices = {a, Complex(2.0) * a};
  t.refresh_mass();
  CHECK_THROWS_AS(gauge_trajectory(t), ConservationError);
}
