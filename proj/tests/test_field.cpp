#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dnls/error.hpp"
#include "dnls/fft.hpp"
#include "dnls/field.hpp"
#include "dnls/sampling.hpp"

using namespace dnls;

namespace {

// Direct Riemann sum of the symmetric transform.
std::vector<Complex> naive_coeffs(const GridFunction& f) {
  const Domain& d = f.domain;
  const double c = d.dx() / std::sqrt(2.0 * std::numbers::pi);
  std::vector<Complex> out(d.size());
  for (std::size_t k = 0; k < d.size(); ++k)
    for (std::size_t j = 0; j < d.size(); ++j)
      out[k] += c * f.values[j] * std::exp(Complex(0.0, -d.x(j) * d.frequency(k)));
  return out;
}

double riemann_l2(const GridFunction& f) {
  double s = 0.0;
  for (auto v : f.values) s += std::norm(v);
  return std::sqrt(f.domain.dx() * s);
}

}  // namespace

TEST_CASE("domain geometry") {
  const Domain t = Domain::torus(16);
  CHECK(t.period() == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(t.dxi() == doctest::Approx(1.0));
  CHECK(t.x(0) == 0.0);
  CHECK(t.wavenumber(3) == 3);
  CHECK(t.wavenumber(8) == -8);
  CHECK(t.wavenumber(15) == -1);
  CHECK(*t.index_of(-1) == 15);
  CHECK_FALSE(t.index_of(8).has_value());

  const Domain l = Domain::line(64, 4);
  CHECK(l.period() == doctest::Approx(8.0 * std::numbers::pi));
  CHECK(l.dxi() == doctest::Approx(0.25));
  CHECK(l.x(0) == doctest::Approx(-4.0 * std::numbers::pi));
  CHECK(l.frequency(4) == doctest::Approx(1.0));
  CHECK(l.with_points(128).domain_scale() == 4);
}

TEST_CASE("transform matches the direct sum on torus and line") {
  Rng rng = make_rng(3, 0);
  for (const Domain& d : {Domain::torus(32), Domain::line(32, 2)}) {
    GridFunction f = GridFunction::zeros(d);
    std::normal_distribution<double> g;
    for (auto& v : f.values) v = {g(rng), g(rng)};
    const auto fast = to_spectral(f).coeffs;
    const auto slow = naive_coeffs(f);
    for (std::size_t k = 0; k < d.size(); ++k) CHECK(std::abs(fast[k] - slow[k]) < 1e-12);
  }
}

TEST_CASE("round trip and Plancherel") {
  Rng rng = make_rng(5, 0);
  const Domain d = Domain::torus(64);
  const GridFunction f = random_smooth_field(d, rng, 20);
  const SpectralField c = to_spectral(f);
  CHECK(max_abs_difference(to_grid(c), f) < 1e-13);
  CHECK(l2_norm(c) == doctest::Approx(riemann_l2(f)).epsilon(1e-13));
  CHECK(l2_norm(f) == doctest::Approx(riemann_l2(f)).epsilon(1e-13));
}

TEST_CASE("conjugate and derivative act mode by mode") {
  const Domain d = Domain::torus(32);
  GridFunction f = GridFunction::zeros(d);
  for (std::size_t j = 0; j < d.size(); ++j)
    f.values[j] = std::exp(Complex(0.0, 3.0 * d.x(j))) + 0.5 * std::cos(d.x(j));
  const GridFunction fc = to_grid(conjugate(to_spectral(f)));
  for (std::size_t j = 0; j < d.size(); ++j) CHECK(std::abs(fc.values[j] - std::conj(f.values[j])) < 1e-13);
  const GridFunction df = to_grid(derivative(to_spectral(f)));
  for (std::size_t j = 0; j < d.size(); ++j) {
    const Complex want = Complex(0.0, 3.0) * std::exp(Complex(0.0, 3.0 * d.x(j))) - 0.5 * std::sin(d.x(j));
    CHECK(std::abs(df.values[j] - want) < 1e-12);
  }
}

TEST_CASE("unit mass places one coefficient") {
  const Domain d = Domain::torus(16);
  const SpectralField e = SpectralField::unit_mass(d, -2, Complex(0.0, 2.0));
  CHECK(e.at_wavenumber(-2) == Complex(0.0, 2.0));
  CHECK(l2_norm(e) == doctest::Approx(2.0));
  CHECK_THROWS_AS(SpectralField::unit_mass(d, 8), Error);
}

TEST_CASE("mixing domains is an error") {
  const GridFunction a = GridFunction::zeros(Domain::torus(16));
  const GridFunction b = GridFunction::zeros(Domain::torus(32));
  const GridFunction c = GridFunction::zeros(Domain::line(16, 1));
  CHECK_THROWS_AS(a + b, DomainMismatchError);
  CHECK_THROWS_AS(a - c, DomainMismatchError);
}

TEST_CASE("fft wrappers are unnormalized inverses") {
  std::vector<Complex> x{{1, 2}, {3, -1}, {0, 0}, {-2, 5}, {1, 1}};
  std::vector<Complex> y(5), z(5);
  fft::forward(x, y);
  CHECK(std::abs(y[0] - Complex(3, 7)) < 1e-14);
  fft::backward(y, z);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(z[i] / 5.0 - x[i]) < 1e-14);
}
