#include <doctest.h>

#include <cmath>
#include <set>

#include "dnls/error.hpp"
#include "dnls/estimates.hpp"
#include "dnls/spaces.hpp"

using namespace dnls;

namespace {

double br(double a) { return std::sqrt(1.0 + a * a); }

MultiplierPoint point(std::array<double, 3> xis, std::array<double, 3> taus) {
  return MultiplierPoint::from_components(xis, taus);
}

// M and M4 written out from the definitions.
double m_oracle(const MultiplierPoint& p) {
  const double s0 = br(p.tau + p.xi * p.xi);
  const double s1 = br(p.taus[0] + p.xis[0] * p.xis[0]);
  const double s2 = br(p.taus[1] + p.xis[1] * p.xis[1]);
  const double s3 = br(p.taus[2] - p.xis[2] * p.xis[2]);
  return std::sqrt(br(p.xi)) * std::abs(p.xis[2]) /
         std::sqrt(s0 * s1 * s2 * s3 * br(p.xis[0]) * br(p.xis[1]) * br(p.xis[2]));
}

double m4_oracle(const MultiplierPoint& p) {
  const double s0 = br(p.tau + p.xi * p.xi);
  const double s1 = br(p.taus[0] + p.xis[0] * p.xis[0]);
  const double s2 = br(p.taus[1] + p.xis[1] * p.xis[1]);
  const double s3 = br(p.taus[2] - p.xis[2] * p.xis[2]);
  return std::pow(s0 * s1 * s2 * s3, -7.0 / 16.0);
}

}  // namespace

TEST_CASE("resonance identity at a hand-checked point") {
  // xi = 6: 36 - 1 - 4 + 9 = 40 = 2 * 5 * 4 = 2 |1+3| |2+3|.
  const MultiplierPoint p = point({1, 2, 3}, {0.5, -2, 7});
  const auto m = p.modulations();
  CHECK(m[0] - m[1] - m[2] - m[3] == doctest::Approx(40.0));
  const ResonanceResult r = resonance_check(p);
  CHECK(r.identity_residual == 0.0);
  CHECK(r.modulus_residual == 0.0);
  CHECK(r.max_bound);
}

TEST_CASE("resonance identity on random points") {
  Rng rng = make_rng(51, 0);
  for (Lattice l : {Lattice::Integer, Lattice::Real})
    for (int i = 0; i < 2000; ++i) {
      const ResonanceResult r = resonance_check(sample_multiplier_point(rng, l, 1000.0));
      CHECK(r.relative() <= 1e-9);
      CHECK(r.max_bound);
    }
}

TEST_CASE("checked construction") {
  CHECK_NOTHROW(MultiplierPoint::checked(6, 5.5, {1, 2, 3}, {0.5, -2, 7}));
  CHECK_THROWS_AS(MultiplierPoint::checked(6.1, 5.5, {1, 2, 3}, {0.5, -2, 7}), ConstructionError);
  CHECK_THROWS_AS(MultiplierPoint::checked(6, 5.0, {1, 2, 3}, {0.5, -2, 7}), ConstructionError);
}

TEST_CASE("A-class picks the largest modulation, lowest index on ties") {
  CHECK(point({0, 0, 0}, {0, 0, 0}).a_class() == 0);
  CHECK(point({0, 0, 0}, {5, 0, 0}).a_class() == 0);
  CHECK(point({0, 0, 0}, {5, -6, 0}).a_class() == 2);
  CHECK(point({1, 0, 0}, {0, 0, 0}).a_class() == 0);
  CHECK(point({0, 0, 2}, {0, 0, 0}).a_class() == 0);
  CHECK(point({0, 0, 2}, {0, 0, -3}).a_class() == 3);
}

TEST_CASE("multipliers at special points") {
  const MultiplierPoint zero = point({0, 0, 0}, {0, 0, 0});
  CHECK(eval_multiplier(MultiplierKind::M, zero) == 0.0);
  CHECK(eval_multiplier(MultiplierKind::M0, zero) == doctest::Approx(1.0));
  CHECK(eval_multiplier(MultiplierKind::M1, zero) == 0.0);
  CHECK(eval_multiplier(MultiplierKind::M4, zero) == doctest::Approx(1.0));
  const MultiplierPoint flat = point({3, -7, 0}, {1, 2, 3});
  CHECK(eval_multiplier(MultiplierKind::M, flat) == 0.0);
  CHECK(eval_multiplier(MultiplierKind::Mt, flat) == 0.0);
}

TEST_CASE("multipliers against the formulas") {
  Rng rng = make_rng(52, 0);
  for (int i = 0; i < 500; ++i) {
    const MultiplierPoint p = sample_multiplier_point(rng, i % 2 ? Lattice::Real : Lattice::Integer, 100.0);
    const double m = eval_multiplier(MultiplierKind::M, p);
    CHECK(m == doctest::Approx(m_oracle(p)).epsilon(1e-12));
    CHECK(eval_multiplier(MultiplierKind::M4, p) == doctest::Approx(m4_oracle(p)).epsilon(1e-12));
    const double s0 = br(p.modulations()[0]);
    CHECK(eval_multiplier(MultiplierKind::Mt, p) == doctest::Approx(m / std::sqrt(s0)).epsilon(1e-12));
    CHECK(eval_multiplier(MultiplierKind::Mt4, p) ==
          doctest::Approx(m4_oracle(p) / std::sqrt(s0)).epsilon(1e-12));
    // Exactly one indicator multiplier is active.
    int active = 0;
    for (MultiplierKind k : {MultiplierKind::M0, MultiplierKind::M1, MultiplierKind::M2, MultiplierKind::M3})
      active += eval_multiplier(k, p) > 0.0;
    CHECK(active == 1);
    CHECK((eval_multiplier(MultiplierKind::Mt0, p) > 0.0) == (p.a_class() == 0));
  }
}

TEST_CASE("delta range") {
  const MultiplierPoint p = point({1, 2, 3}, {0, 0, 0});
  CHECK_THROWS_AS(eval_multiplier(MultiplierKind::Mt0, p, 0.0), ParameterError);
  CHECK_THROWS_AS(eval_multiplier(MultiplierKind::M, p, 1.0 / 6.0), ParameterError);
  CHECK_NOTHROW(eval_multiplier(MultiplierKind::Mt0, p, 0.1));
}

TEST_CASE("case tree") {
  CHECK(classify_case(point({1, 1, 10}, {0, 0, 0})) == TrilinearCase::I);
  CHECK(classify_case(point({5, 5, 0}, {0, 0, 0})) == TrilinearCase::II);
  CHECK(classify_case(point({1, 10, 0.5}, {0, 0, 0})) == TrilinearCase::IIIb);
  CHECK(classify_case(point({0.01, 10, -9.98}, {0, 0, 0})) == TrilinearCase::IIIa);
  CHECK(classify_case(point({10, 1, 0.5}, {0, 0, 0})) == TrilinearCase::IVb);
  CHECK(std::string(to_string(TrilinearCase::IIIc)) == "iii-c");
  CHECK(all_cases().size() == 10);

  // The sampler reaches every case on R.
  Rng rng = make_rng(53, 0);
  std::set<TrilinearCase> seen;
  for (int i = 0; i < 20000; ++i) seen.insert(classify_case(sample_multiplier_point(rng, Lattice::Real, 100.0)));
  CHECK(seen.size() == 10);
}

TEST_CASE("domination on a small sample") {
  for (bool tilde : {false, true}) {
    DominationSpec s;
    s.tilde = tilde;
    s.lattice = Lattice::Real;
    s.samples = 10000;
    const ProbeReport r = domination_probe(s);
    CHECK(std::isfinite(r.sup_ratio));
    CHECK(r.stable);
    CHECK(r.metrics.at("sup_ratio_2box") <= 2.0 * r.metrics.at("sup_ratio_box"));
  }
  DominationSpec ii;
  ii.only_case = TrilinearCase::II;
  ii.samples = 10000;
  const DominationResult r = domination_scan(ii);
  CHECK(r.case_count.size() == 1);
  CHECK(r.case_count.begin()->first == "ii");
  CHECK(classify_case(r.argmax) == TrilinearCase::II);
}

TEST_CASE("resonance probe") {
  const ProbeReport r = resonance_probe(Lattice::Integer, 10000, 1000.0, 3);
  CHECK(r.passed);
  CHECK(r.samples == 10000);
  CHECK(r.sup_ratio <= 1e-9);
}

TEST_CASE("L4 norm of a constant") {
  const Domain d = Domain::torus(8);
  std::vector<Complex> s(8 * 3, Complex(2.0));
  // |u|^4 = 16 over a 2 pi x (3 dt) box.
  CHECK(l4_norm(s, d, 0.5) == doctest::Approx(std::pow(16.0 * 2.0 * 3.141592653589793 * 1.5, 0.25)));
}

TEST_CASE("Strichartz probe is mode independent") {
  StrichartzSpec s;
  s.ensemble = 10;
  s.n_points = {32};
  s.n_times = 257;
  const ProbeReport r = strichartz_probe(s);
  CHECK(std::isfinite(r.sup_ratio));
  CHECK(r.metrics.at("single_mode_spread") <= 0.05);
}

TEST_CASE("trilinear probe reports one value per T") {
  SpaceTimeProbeSpec s;
  s.ensemble = 3;
  s.n_points = 16;
  s.n_times = 257;
  s.band = 2;
  s.T_values = {1.0, 0.5};
  const ProbeReport r = trilinear_probe(s);
  CHECK(std::isfinite(r.sup_ratio));
  CHECK(r.series.size() >= 2);
  CHECK(r.series.front().second.size() == 2);
}

TEST_CASE("k = 0 product is bounded by the factor norm") {
  SpaceTimeProbeSpec s;
  s.ensemble = 5;
  s.n_points = 16;
  s.n_times = 257;
  s.band = 3;
  s.T_values = {1.0, 0.5};
  const ProbeReport r = multilinear_probe(0, s);
  CHECK(r.metrics.at("max_ratio_X") <= 1.0);
  CHECK_THROWS_AS(multilinear_probe(3, s), ParameterError);
}

TEST_CASE("dyadic sums with explicit constants") {
  Rng rng = make_rng(54, 0);
  const Domain d = Domain::torus(32);
  const WaveSum w = draw_wave_sum(rng, 12, 2, 4.0, false);
  const SpaceTimeField u = wave_sum_field(w, d, 129, TimeWindow::bump(1.0));
  const ProbeReport r = dyadic_sum_check(u, 0.25, 0.5, 0.5, 2.0, 8);
  CHECK(r.passed);
  CHECK(r.metrics.at("XX_constant") == 3.0);
  CHECK(r.metrics.at("XXX_constant") == 3.0);
  CHECK(r.metrics.at("XXX_blocks_above_one") == 3.0);
  CHECK(r.metrics.at("X_constant") == doctest::Approx(1.0 + std::pow(2.0, -0.25) + std::pow(4.0, -0.25) +
                                                      std::pow(8.0, -0.25) + std::pow(16.0, -0.25) +
                                                      std::pow(32.0, -0.25) + std::pow(64.0, -0.25)));
  // A single block: every sum is that block.
  SpaceTimeField one = SpaceTimeField::zeros(d, 129, wave_sum_dt(129), wave_sum_t0());
  one.at(0, *d.index_of(0)) = 1.0;
  const ProbeReport q = dyadic_sum_check(one, 0.25, 0.5, 0.5, 2.0, 8);
  CHECK(q.metrics.at("X_lhs") == doctest::Approx(frak_norm(one, {0.5, 0.5})));
  CHECK(q.passed);
}

TEST_CASE("Sobolev multiplication") {
  SobolevMultSpec s;
  s.ensemble = 20;
  s.n_points = {64};
  const ProbeReport r = sobolev_mult_probe(s);
  CHECK(std::isfinite(r.sup_ratio));
  s.s1 = 0.5;
  s.s2 = 0.5;
  CHECK_THROWS_AS(sobolev_mult_probe(s), ParameterError);
  s.s1 = 0.4;
  s.s2 = 2.0;
  CHECK_THROWS_AS(sobolev_mult_probe(s), ParameterError);
}

TEST_CASE("monotone series") {
  CHECK(non_increasing({3.0, 2.0, 2.0, 1.0}));
  CHECK_FALSE(non_increasing({3.0, 2.0, 2.5}));
  CHECK(non_increasing({}));
}
