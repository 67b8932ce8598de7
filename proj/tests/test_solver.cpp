#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dnls/error.hpp"
#include "dnls/sampling.hpp"
#include "dnls/solver.hpp"

using namespace dnls;

namespace {

GridFunction plane(const Domain& d, long m, double a, double t, double omega) {
  GridFunction f = GridFunction::zeros(d);
  for (std::size_t j = 0; j < d.size(); ++j)
    f.values[j] = a * std::exp(Complex(0.0, static_cast<double>(m) * d.x(j) - omega * t));
  return f;
}

double rel_l2(const GridFunction& a, const GridFunction& b) { return l2_norm(a - b) / l2_norm(b); }

}  // namespace

TEST_CASE("config validation") {
  SolverConfig c;
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = {};
  c.t_final = 0.10005;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = {};
  c.record_every = 0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = {};
  c.pad_factor = 3;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = {};
  CHECK(c.steps() == 1000);
}

TEST_CASE("free propagator") {
  const Domain d = Domain::torus(32);
  const SpectralField e = SpectralField::unit_mass(d, 3);
  CHECK(std::abs(linear_propagate(e, 0.5).at_wavenumber(3) - std::exp(Complex(0.0, -4.5))) < 1e-14);
}

TEST_CASE("plane wave solution for both integrators") {
  // omega = m^2 - m A^2 + lambda A^{2k}
  for (Integrator integ : {Integrator::EtdRk4, Integrator::IfRk4}) {
    SolverConfig c;
    c.domain = Domain::torus(64);
    c.dt = 1e-3;
    c.t_final = 0.1;
    c.integrator = integ;
    c.nonlinearity = {0.5, 2, false};
    const double a = 0.5;
    const long m = 2;
    const double omega = 4.0 - 2.0 * a * a + 0.5 * std::pow(a, 4);
    const Trajectory t = solve(plane(c.domain, m, a, 0.0, omega), c);
    CHECK(t.size() == 101);
    CHECK(rel_l2(t.slices.back(), plane(c.domain, m, a, 0.1, omega)) < 1e-10);
    CHECK(relative_mass_drift(t) < 1e-12);
  }
}

TEST_CASE("record_every thins the trajectory") {
  SolverConfig c;
  c.domain = Domain::torus(32);
  c.dt = 1e-3;
  c.t_final = 0.01;
  c.record_every = 5;
  const Trajectory t = solve(plane(c.domain, 1, 0.5, 0.0, 0.75), c);
  CHECK(t.size() == 3);
  CHECK(t.times.back() == doctest::Approx(0.01));
  c.record_every = 3;
  CHECK_THROWS_AS(solve(plane(c.domain, 1, 0.5, 0.0, 0.75), c), ParameterError);
}

TEST_CASE("backward and two-sided solves") {
  SolverConfig c;
  c.domain = Domain::torus(64);
  c.dt = 1e-3;
  c.t_final = 0.05;
  c.nonlinearity = {1.0, 1, false};
  Rng rng = make_rng(41, 0);
  const GridFunction u0 = scale_to_sobolev(random_smooth_field(c.domain, rng, 4), 1.0, 0.3);
  const Trajectory fwd = solve(u0, c);
  c.direction = Direction::Backward;
  const Trajectory back = solve(fwd.slices.back(), c);
  CHECK(back.times.front() == doctest::Approx(-0.05));
  CHECK(back.times.back() == doctest::Approx(0.0));
  CHECK(max_abs_difference(back.slices.front(), u0) < 1e-9);
  c.direction = Direction::Forward;
  const Trajectory both = solve_two_sided(u0, c);
  CHECK(both.size() == 101);
  CHECK(both.times.front() == doctest::Approx(-0.05));
  CHECK(max_abs_difference(both.slices[50], u0) == 0.0);
  both.validate();
}

TEST_CASE("line data must decay") {
  SolverConfig c;
  c.domain = Domain::line(64, 1);
  c.dt = 1e-3;
  c.t_final = 0.01;
  GridFunction flat = GridFunction::zeros(c.domain);
  for (auto& v : flat.values) v = 0.1;
  CHECK_THROWS_AS(solve(flat, c), DomainError);
}

TEST_CASE("blow-up is reported") {
  SolverConfig c;
  c.domain = Domain::torus(32);
  c.dt = 1e-2;
  c.t_final = 1.0;
  c.nonlinearity = {-50.0, 3, false};
  Rng rng = make_rng(42, 0);
  const GridFunction u0 = scale_to_sobolev(random_smooth_field(c.domain, rng, 8), 1.0, 10.0);
  CHECK_THROWS_AS(solve(u0, c), BlowUpError);
}

TEST_CASE("free trajectory and Duhamel") {
  SolverConfig c;
  c.domain = Domain::torus(32);
  c.dt = 1e-3;
  c.t_final = 0.02;
  const GridFunction e = to_grid(SpectralField::unit_mass(c.domain, 2));
  const Trajectory w = free_trajectory(e, c);
  // int_0^t U_{t-t'} U_{t'} e dt' = t U_t e.
  const GridFunction want = Complex(0.02) * linear_propagate(e, 0.02);
  CHECK(max_abs_difference(duhamel_apply(w, 0.02), want) < 1e-12);
  CHECK(max_abs(duhamel_apply(w, 0.0)) == 0.0);
  CHECK_THROWS_AS(duhamel_apply(w, 0.0105), RangeError);
  CHECK_THROWS_AS(duhamel_apply(w, 0.5), RangeError);
}

TEST_CASE("Picard iteration contracts and matches the stepper") {
  SolverConfig c;
  c.domain = Domain::torus(64);
  c.dt = 1e-3;
  c.t_final = 0.05;
  c.nonlinearity = {0.0, 1, false};
  Rng rng = make_rng(43, 0);
  const GridFunction u0 = scale_to_sobolev(random_smooth_field(c.domain, rng, 4), 1.0, 0.1);
  const PicardResult p = picard_iterate(u0, c, 8);
  CHECK_FALSE(p.diverged);
  REQUIRE(!p.ratios.empty());
  for (double r : p.ratios) CHECK(r < 0.5);
  const Trajectory s = solve(u0, c);
  double gap = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) gap = std::max(gap, l2_norm(s.slices[i] - p.iterate.slices[i]));
  CHECK(gap < 1e-6);
}

TEST_CASE("rescaling") {
  SolverConfig c;
  c.domain = Domain::line(128, 2);
  c.dt = 1e-3;
  c.t_final = 0.01;
  Rng rng = make_rng(44, 0);
  const GridFunction u0 = random_wave_packets(c.domain, rng, 1);
  const GridFunction r = rescale(u0, 2);
  CHECK(r.domain.domain_scale() == 4);
  CHECK(l2_norm(r) == doctest::Approx(l2_norm(u0)).epsilon(1e-13));
  const Trajectory tr = rescale(solve(u0, c), 4);
  CHECK(tr.times.back() == doctest::Approx(0.16));
  CHECK_THROWS_AS(rescale(u0, 3), ParameterError);
  CHECK_THROWS_AS(rescale(GridFunction::zeros(Domain::torus(16)), 2), DomainError);
}
