#include <doctest.h>

#include <cmath>

#include "dnls/error.hpp"
#include "dnls/frequency.hpp"
#include "dnls/sampling.hpp"

using namespace dnls;

TEST_CASE("master bump") {
  CHECK(smooth_cutoff(0.0) == 1.0);
  CHECK(smooth_cutoff(1.0) == 1.0);
  CHECK(smooth_cutoff(-1.0) == 1.0);
  CHECK(smooth_cutoff(2.0) == 0.0);
  CHECK(smooth_cutoff(-3.5) == 0.0);
  CHECK(smooth_cutoff(1.5) == doctest::Approx(0.5));
  double prev = 1.0;
  for (double x = 1.0; x <= 2.0; x += 1e-3) {
    const double v = smooth_cutoff(x);
    CHECK(v <= prev);
    CHECK(v == doctest::Approx(smooth_cutoff(-x)));
    prev = v;
  }
}

TEST_CASE("bracket") {
  CHECK(bracket(0.0) == 1.0);
  CHECK(bracket(3.0) == doctest::Approx(std::sqrt(10.0)));
  CHECK(bracket(1e200) == doctest::Approx(1e200));
}

TEST_CASE("annulus support") {
  for (double T : {1.0, 4.0, 32.0}) {
    CHECK(annulus_cutoff(0.0, T) == 0.0);
    CHECK(annulus_cutoff(0.5 * T, T) == 0.0);
    CHECK(annulus_cutoff(2.0 * T, T) == 0.0);
    CHECK(annulus_cutoff(T, T) == doctest::Approx(1.0));
    CHECK(low_cutoff(T, T) == 1.0);
  }
}

TEST_CASE("interval cutoff") {
  CHECK(interval_cutoff(0.0, 0.0, 1.0) == 1.0);
  CHECK(interval_cutoff(1.0, 0.0, 1.0) == 1.0);
  CHECK(interval_cutoff(-1.0, 0.0, 1.0) == 0.0);
  CHECK(interval_cutoff(2.0, 0.0, 1.0) == 0.0);
  CHECK(interval_cutoff(3.0, 2.0, 4.0) == 1.0);
  CHECK_THROWS_AS(interval_cutoff(0.0, 1.0, 1.0), InvalidIntervalError);
  CHECK_THROWS_AS(interval_cutoff(0.0, 2.0, 1.0), InvalidIntervalError);
}

TEST_CASE("dyadic index validation") {
  CHECK(DyadicIndex(1).value() == 1);
  CHECK(DyadicIndex(64).as_double() == 64.0);
  CHECK_THROWS_AS(DyadicIndex(0), InvalidIndexError);
  CHECK_THROWS_AS(DyadicIndex(3), InvalidIndexError);
  CHECK_THROWS_AS(DyadicIndex(96), InvalidIndexError);
  CHECK(DyadicIndex(2) < DyadicIndex(4));
}

TEST_CASE("dyadic weights sum to one") {
  const Domain d = Domain::line(256, 4);
  const auto range = dyadic_range(d);
  CHECK(range.front().value() == 1);
  CHECK(range.back().value() == 512);
  for (double xi = -70.0; xi <= 70.0; xi += 0.173) {
    double sum = 0.0;
    for (DyadicIndex N : range) sum += dyadic_weight(xi, N);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("projections reassemble the field") {
  Rng rng = make_rng(11, 0);
  const Domain d = Domain::torus(128);
  const SpectralField f = to_spectral(random_smooth_field(d, rng, 50, 0.5));
  SpectralField sum = SpectralField::zeros(d);
  for (DyadicIndex N : dyadic_range(d)) sum = sum + dyadic_projection(f, N);
  CHECK(l2_norm(sum - f) < 1e-13 * l2_norm(f));
}

TEST_CASE("Bessel potential") {
  const Domain d = Domain::torus(32);
  const SpectralField e = SpectralField::unit_mass(d, 3);
  CHECK(bessel_potential(e, 1.0).at_wavenumber(3).real() == doctest::Approx(std::sqrt(10.0)));
  CHECK(bessel_potential(e, -2.0).at_wavenumber(3).real() == doctest::Approx(0.1));
  CHECK(l2_norm(bessel_potential(e, 0.0) - e) == 0.0);
}

TEST_CASE("interval projection keeps the interval") {
  const Domain d = Domain::torus(64);
  SpectralField f = SpectralField::zeros(d);
  for (long m = -31; m <= 31; ++m) f.at_wavenumber(m) = 1.0;
  const SpectralField p = interval_projection(f, 4.0, 8.0);
  for (long m = 4; m <= 8; ++m) CHECK(p.at_wavenumber(m) == Complex(1.0));
  CHECK(p.at_wavenumber(0) == Complex(0.0));
  CHECK(p.at_wavenumber(12) == Complex(0.0));
  CHECK_THROWS_AS(interval_projection(f, 3.0, -3.0), InvalidIntervalError);
}

TEST_CASE("modulation weight on a single mode") {
  const Domain d = Domain::torus(8);
  SpaceTimeField u = SpaceTimeField::zeros(d, 5, 0.1, 0.0);
  u.at(1, *d.index_of(2)) = 1.0;
  const double tau = u.tau(1);
  CHECK(std::abs(modulation_weight(u, 0.5, ModulationSign::Plus).at(1, *d.index_of(2))) ==
        doctest::Approx(std::sqrt(bracket(tau + 4.0))));
  CHECK(std::abs(modulation_weight(u, 1.0, ModulationSign::Minus).at(1, *d.index_of(2))) ==
        doctest::Approx(bracket(tau - 4.0)));
}
