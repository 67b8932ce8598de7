#include <doctest.h>

#include <cmath>

#include "dnls/error.hpp"
#include "dnls/nonlinear.hpp"
#include "dnls/sampling.hpp"

using namespace dnls;

namespace {

GridFunction plane(const Domain& d, long m, Complex a) {
  return to_grid(SpectralField::unit_mass(d, m, a * std::sqrt(2.0 * 3.141592653589793) / d.dxi()));
}

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) e = std::max(e, std::abs(a.coeffs[k] - b.coeffs[k]));
  return e;
}

double max_coeff(const SpectralField& a) {
  double e = 0.0;
  for (auto c : a.coeffs) e = std::max(e, std::abs(c));
  return e;
}

}  // namespace

TEST_CASE("plane wave sample amplitude") {
  const Domain d = Domain::torus(32);
  const GridFunction u = plane(d, 2, 0.5);
  CHECK(std::abs(u.values[3] - 0.5 * std::exp(Complex(0.0, 2.0 * d.x(3)))) < 1e-14);
}

TEST_CASE("original right-hand side on a plane wave") {
  // i d_x(|u|^2 u) = -m A^2 u, lambda |u|^{2k} u = lambda A^{2k} u.
  const Domain d = Domain::torus(32);
  const GridFunction u = plane(d, 3, 0.5);
  const GridFunction f = rhs_original(u, {2.0, 2, false});
  const double factor = -3.0 * 0.25 + 2.0 * std::pow(0.5, 4);
  CHECK(max_abs_difference(f, factor * u) < 1e-13);
}

TEST_CASE("single mode on the torus keeps only the diagonal term") {
  // Every lattice point is excluded except the diagonal one, which gives i xi |A|^2 v.
  const Domain d = Domain::torus(32);
  for (long m : {1L, 4L}) {
    const GridFunction u = plane(d, m, 0.7);
    const GridFunction want = Complex(0.0, static_cast<double>(m) * 0.49) * u;
    CHECK(max_abs_difference(trilinear_T_physical(u, u, conjugate(u)), want) < 1e-13);
    const SpectralField c = to_spectral(u);
    CHECK(max_coeff_diff(trilinear_T_fourier(c, c, conjugate(c)), to_spectral(want)) < 1e-12);
  }
  CHECK(max_abs(quintic_Q_physical(plane(d, 4, 0.7))) < 1e-13);
}

TEST_CASE("single-mode trilinear on the line") {
  const Domain d = Domain::line(32, 2);
  const GridFunction u = plane(d, 4, 0.5);
  // v v d_x conj v = -i xi |A|^2 v with xi = 4 dxi = 2.
  CHECK(max_abs_difference(trilinear_T_physical(u, u, conjugate(u)), Complex(0.0, -0.5) * u) < 1e-13);
  CHECK(max_abs_difference(quintic_Q_physical(u), std::pow(0.5, 4) * u) < 1e-13);
}

TEST_CASE("physical and Fourier trilinear agree") {
  Rng rng = make_rng(21, 0);
  for (const Domain& d : {Domain::torus(32), Domain::line(32, 2)}) {
    for (int i = 0; i < 10; ++i) {
      const GridFunction a = random_smooth_field(d, rng, 15);
      const GridFunction b = random_smooth_field(d, rng, 15);
      const GridFunction c = random_smooth_field(d, rng, 15);
      const SpectralField want = trilinear_T_fourier(to_spectral(a), to_spectral(b), to_spectral(c));
      const SpectralField got = to_spectral(trilinear_T_physical(a, b, c));
      CHECK(max_coeff_diff(got, want) < 1e-10 * std::max(1.0, max_coeff(want)));
    }
  }
}

TEST_CASE("physical and Fourier quintic agree") {
  Rng rng = make_rng(22, 0);
  for (const Domain& d : {Domain::torus(16), Domain::line(16, 1)}) {
    for (int i = 0; i < 5; ++i) {
      std::vector<GridFunction> v;
      for (int j = 0; j < 5; ++j) v.push_back(random_smooth_field(d, rng, 7));
      std::vector<SpectralField> c;
      for (const auto& f : v) c.push_back(to_spectral(f));
      const SpectralField want = quintic_Q_fourier(c[0], c[1], c[2], c[3], c[4]);
      const SpectralField got = to_spectral(quintic_Q_physical(v[0], v[1], v[2], v[3], v[4]));
      CHECK(max_coeff_diff(got, want) < 1e-9 * std::max(1.0, max_coeff(want)));
    }
  }
}

TEST_CASE("one-argument quintic is the five-argument form") {
  Rng rng = make_rng(23, 0);
  const Domain d = Domain::torus(32);
  const GridFunction v = random_smooth_field(d, rng, 5);
  const GridFunction vc = conjugate(v);
  CHECK(max_abs_difference(quintic_Q_physical(v), quintic_Q_physical(v, vc, v, vc, v)) < 1e-12);
}

TEST_CASE("gauged right-hand side") {
  Rng rng = make_rng(24, 0);
  const Domain d = Domain::torus(32);
  const GridFunction v = random_smooth_field(d, rng, 5);
  const NonlinearityConfig cfg{1.5, 1, true};
  const GridFunction want = Complex(0.0, -1.0) * trilinear_T_physical(v, v, conjugate(v)) -
                            Complex(0.5) * quintic_Q_physical(v) + power_nonlinearity(v, 1.5, 1);
  CHECK(max_abs_difference(rhs_gauged(v, cfg), want) < 1e-12);
  CHECK(max_abs_difference(rhs(v, cfg), want) < 1e-12);
}

TEST_CASE("power nonlinearity with high k is not aliased") {
  const Domain d = Domain::torus(32);
  const GridFunction u = plane(d, 1, 0.5);
  const GridFunction p = power_nonlinearity(u, 1.0, 4, 2);
  CHECK(max_abs_difference(p, std::pow(0.5, 8) * u) < 1e-14);
}

TEST_CASE("oracle size limits") {
  const SpectralField big = SpectralField::zeros(Domain::torus(128));
  CHECK_THROWS_AS(trilinear_T_fourier(big, big, big), SizeLimitError);
  const SpectralField mid = SpectralField::zeros(Domain::torus(64));
  CHECK_THROWS_AS(quintic_Q_fourier(mid, mid, mid, mid, mid), SizeLimitError);
}

TEST_CASE("invalid nonlinearity") {
  NonlinearityConfig cfg{1.0, -1, false};
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

namespace {

// Enumerates (m1, m3) and derives m2, so it shares no loop structure with the
// library oracle.
SpectralField trilinear_torus_direct(const SpectralField& a, const SpectralField& b,
                                     const SpectralField& c) {
  const Domain& d = a.domain;
  const long h = static_cast<long>(d.size() / 2);
  const double w = 1.0 / (2.0 * 3.141592653589793);
  SpectralField out = SpectralField::zeros(d);
  for (long m1 = -h; m1 < h; ++m1)
    for (long m3 = -h; m3 < h; ++m3)
      for (long m = -h; m < h; ++m) {
        const long m2 = m - m1 - m3;
        if (m2 < -h || m2 >= h) continue;
        if (m1 + m3 == 0 || m2 + m3 == 0) continue;
        out.at_wavenumber(m) += w * a.at_wavenumber(m1) * b.at_wavenumber(m2) *
                                Complex(0.0, static_cast<double>(m3)) * c.at_wavenumber(m3);
      }
  // Diagonal term i xi v1(xi) v2(xi) v3(-xi).
  for (long m = -h + 1; m < h; ++m)
    out.at_wavenumber(m) += w * a.at_wavenumber(m) * b.at_wavenumber(m) *
                            Complex(0.0, static_cast<double>(m)) * c.at_wavenumber(-m);
  return out;
}

}  // namespace

TEST_CASE("library trilinear oracle against a direct enumeration") {
  Rng rng = make_rng(25, 0);
  const Domain d = Domain::torus(16);
  std::normal_distribution<double> g;
  auto draw = [&] {
    SpectralField f = SpectralField::zeros(d);
    for (long m = -4; m <= 4; ++m) f.at_wavenumber(m) = {g(rng), g(rng)};
    return f;
  };
  for (int i = 0; i < 5; ++i) {
    const SpectralField a = draw(), b = draw(), c = draw();
    const SpectralField want = trilinear_torus_direct(a, b, c);
    CHECK(max_coeff_diff(trilinear_T_fourier(a, b, c), want) < 1e-12 * max_coeff(want));
    CHECK(max_coeff_diff(to_spectral(trilinear_T_physical(to_grid(a), to_grid(b), to_grid(c))), want) <
          1e-12 * max_coeff(want));
  }
}
