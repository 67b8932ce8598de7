#include "dnls/cli/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <random>

#include "dnls/error.hpp"
#include "dnls/field.hpp"
#include "dnls/gauge.hpp"
#include "dnls/parallel.hpp"
#include "dnls/sampling.hpp"
#include "dnls/solver.hpp"
#include "dnls/spaces.hpp"

namespace dnls::cli {
namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::isnan(x) ? x : std::max(m, x);
  return m;
}

FieldDump dump_of(const GridFunction& f, double t) { return {to_spectral(f), t}; }

// ---------------------------------------------------------------- parsing

Domain parse_domain(Params& parent, const char* kind_def, std::size_t n_def,
                    std::size_t scale_def) {
  Params p = parent.child("domain");
  const std::string kind = p.choice("kind", std::string(kind_def), {"torus", "line"});
  const std::size_t n = p.count("n_points", n_def, 8);
  if (!power_of_two(n)) p.fail("n_points", "'n_points' must be a power of two >= 8");
  std::size_t scale = 1;
  if (kind == "line") {
    scale = p.count("domain_scale", scale_def);
    if (!power_of_two(scale)) p.fail("domain_scale", "'domain_scale' must be a power of two");
  } else if (p.has("domain_scale")) {
    p.count("domain_scale", 1);
    p.fail("domain_scale", "'domain_scale' applies to the line only");
  }
  p.finish();
  return kind == "torus" ? Domain::torus(n) : Domain::line(n, scale);
}

struct SolverDefaults {
  std::optional<double> dt;
  std::optional<double> t_final;
  double lambda = 0.0;
  int k_power = 1;
};

SolverConfig parse_solver(Params& p, const Domain& d, const SolverDefaults& def,
                          bool allow_gauged) {
  SolverConfig cfg;
  cfg.domain = d;
  cfg.dt = p.positive("dt", def.dt);
  cfg.t_final = p.positive("t_final", def.t_final);
  if (cfg.dt > cfg.t_final) p.fail("dt", "'dt' must not exceed 't_final'");
  const double ratio = cfg.t_final / cfg.dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
    p.fail("t_final", "'t_final' must be an integer multiple of 'dt'");
  cfg.nonlinearity.lambda = p.number("lambda", def.lambda);
  cfg.nonlinearity.k_power = static_cast<int>(p.integer("k_power", def.k_power, 0, 8));
  cfg.nonlinearity.gauged = allow_gauged ? p.flag("gauged", false) : false;
  cfg.integrator =
      p.choice("integrator", std::string("etdrk4"), {"etdrk4", "ifrk4"}) == "etdrk4"
          ? Integrator::EtdRk4
          : Integrator::IfRk4;
  const long pad = p.integer("pad_factor", 4, 2, 4);
  if (pad != 2 && pad != 4) p.fail("pad_factor", "'pad_factor' must be 2 or 4");
  cfg.pad_factor = static_cast<std::size_t>(pad);
  cfg.record_every = p.count("record_every", 1);
  if (cfg.steps() % cfg.record_every != 0)
    p.fail("record_every", "'record_every' must divide the number of steps (" +
                               std::to_string(cfg.steps()) + ")");
  return cfg;
}

struct InitialSpec {
  std::string kind;
  int band = 4;
  double decay = 1.0;
  double h1_norm = 0.3;
  int packets = 3;
  double amplitude = 0.5;
  long mode = 1;
  std::optional<FieldDump> file;
};

InitialSpec parse_initial(Params& parent, const Domain& d) {
  Params p = parent.child("initial");
  InitialSpec s;
  s.kind = p.choice("kind", std::string(d.is_torus() ? "smooth" : "packets"),
                    {"smooth", "packets", "plane-wave", "file"});
  const long half = static_cast<long>(d.size() / 2);
  if (s.kind == "smooth") {
    s.band = static_cast<int>(p.integer("band", 4, 1, half - 1));
    s.decay = p.number("decay", 1.0, 0.0);
    s.h1_norm = p.positive("h1_norm", 0.3);
    if (!d.is_torus()) p.fail("kind", "smooth periodic data does not decay on the line; use packets");
  } else if (s.kind == "packets") {
    if (d.is_torus()) p.fail("kind", "wave packets are meant for the line");
    s.packets = static_cast<int>(p.integer("packets", 3, 1, 64));
    s.h1_norm = p.positive("h1_norm", 0.3);
  } else if (s.kind == "plane-wave") {
    if (!d.is_torus()) p.fail("kind", "plane waves live on the torus");
    s.amplitude = p.positive("amplitude", 0.5);
    s.mode = p.integer("mode", 1, -(half - 1), half - 1);
  } else {
    const std::string path = p.text("path", std::nullopt);
    try {
      s.file = read_field_dump(path);
    } catch (const FormatError& e) {
      p.fail("path", e.what());
    }
    if (!(s.file->field.domain == d)) p.fail("path", "field dump lives on a different domain");
  }
  p.finish();
  return s;
}

GridFunction make_initial(const InitialSpec& s, const Domain& d, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0);
  if (s.kind == "smooth")
    return scale_to_sobolev(random_smooth_field(d, rng, s.band, s.decay), 1.0, s.h1_norm);
  if (s.kind == "packets")
    return scale_to_sobolev(random_wave_packets(d, rng, s.packets), 1.0, s.h1_norm);
  if (s.kind == "plane-wave") {
    std::vector<Complex> v(d.size());
    for (std::size_t j = 0; j < d.size(); ++j)
      v[j] = std::polar(s.amplitude, static_cast<double>(s.mode) * d.x(j));
    return GridFunction(d, std::move(v));
  }
  return to_grid(s.file->field);
}

SpaceTimeProbeSpec parse_space_time(Params& p, std::uint64_t seed) {
  SpaceTimeProbeSpec s;
  s.s = p.number("s", 0.5, 0.5);
  s.T_values = p.numbers("T_values", s.T_values);
  for (std::size_t i = 0; i < s.T_values.size(); ++i)
    if (!(s.T_values[i] > 0.0 && s.T_values[i] <= 1.0))
      p.fail("T_values", "'T_values' entries must lie in (0, 1]");
  if (!std::is_sorted(s.T_values.rbegin(), s.T_values.rend()))
    p.fail("T_values", "'T_values' must be in decreasing order");
  s.ensemble = p.count("ensemble", s.ensemble);
  s.n_points = p.count("n_points", s.n_points, 8);
  if (!power_of_two(s.n_points)) p.fail("n_points", "'n_points' must be a power of two >= 8");
  s.n_times = p.count("n_times", s.n_times, 3);
  if (s.n_times % 2 == 0) p.fail("n_times", "'n_times' must be odd");
  s.band = static_cast<int>(p.integer("band", s.band, 0, static_cast<long>(s.n_points / 2 - 1)));
  s.per_mode = static_cast<int>(p.integer("per_mode", s.per_mode, 1, 16));
  s.max_offset = p.number("max_offset", s.max_offset, 0.0);
  s.scale_offsets = p.flag("scale_offsets", s.scale_offsets);
  s.seed = seed;
  return s;
}

void record_probe(Recorder& rec, const ProbeReport& r) {
  rec.metric(r.name + ".sup_ratio", r.sup_ratio);
  rec.check(r.name + ".finite", std::isfinite(r.sup_ratio));
  rec.probe(r);
}

// ------------------------------------------------------------- scenarios

Action plan_solve(Params& p, std::uint64_t seed) {
  const Domain d = parse_domain(p, "torus", 256, 8);
  const SolverConfig cfg = parse_solver(p, d, {}, true);
  const InitialSpec init = parse_initial(p, d);
  const bool two_sided = p.flag("two_sided", false);
  const bool backward = p.choice("direction", std::string("forward"), {"forward", "backward"}) ==
                        "backward";
  const double mass_tol = p.positive("mass_tol", 1e-9);
  const std::size_t dump_every = p.count("dump_every", 0, 0);
  p.finish();
  return [=](Recorder& rec) {
    SolverConfig c = cfg;
    if (backward) c.direction = Direction::Backward;
    const GridFunction u0 = make_initial(init, d, seed);
    const Trajectory traj = two_sided ? solve_two_sided(u0, c) : solve(u0, c);
    rec.metric("steps", static_cast<double>(c.steps()));
    rec.metric("slices", static_cast<double>(traj.size()));
    rec.metric("initial_l2", l2_norm(u0));
    rec.metric("final_l2", l2_norm(traj.slices.back()));
    rec.metric("final_max_abs", max_abs(traj.slices.back()));
    rec.check_le("relative_mass_drift", relative_mass_drift(traj), mass_tol);
    std::vector<double> l2;
    for (double m : traj.mass) l2.push_back(std::sqrt(m));
    rec.series("l2_norm", "t", traj.times, "l2_norm", l2);
    rec.field("initial.fd", dump_of(u0, 0.0));
    rec.field("final.fd", dump_of(traj.slices.back(), traj.times.back()));
    if (dump_every > 0)
      for (std::size_t m = 0; m < traj.size(); m += dump_every) {
        char name[32];
        std::snprintf(name, sizeof name, "slice_%05zu.fd", m);
        rec.field(name, dump_of(traj.slices[m], traj.times[m]));
      }
  };
}

Action plan_gauge_roundtrip(Params& p, std::uint64_t seed) {
  const Domain d = parse_domain(p, "torus", 128, 8);
  const std::size_t count = p.count("count", 100);
  const int band = static_cast<int>(p.integer("band", 8, 1, static_cast<long>(d.size() / 2 - 1)));
  const double max_norm = p.positive("max_l2_norm", 2.0);
  const double tol = p.positive("tol", 1e-12);
  const bool bilipschitz = p.flag("bilipschitz", false);
  BilipschitzSpec bl;
  bl.radius = p.positive("radius", bl.radius);
  bl.ensemble = p.count("bilipschitz_ensemble", bl.ensemble);
  bl.n_points = p.counts("bilipschitz_n_points", bl.n_points);
  for (auto n : bl.n_points)
    if (!power_of_two(n) || n < 16)
      p.fail("bilipschitz_n_points", "'bilipschitz_n_points' entries must be powers of two >= 16");
  bl.seed = seed;
  p.finish();
  return [=](Recorder& rec) {
    struct Errors {
      double round_trip, modulus;
    };
    const auto errs = parallel_map(count, [&](std::size_t i) {
      Rng rng = make_rng(seed, i);
      std::uniform_real_distribution<double> u(0.05, 1.0);
      GridFunction f = d.is_torus() ? random_smooth_field(d, rng, band)
                                    : random_wave_packets(d, rng, 3);
      f = Complex(max_norm * u(rng) / l2_norm(f)) * f;
      const GaugeReport r = gauge_report(f);
      return Errors{r.round_trip_error, r.modulus_error};
    });
    double rt = 0.0, mod = 0.0;
    for (const auto& e : errs) {
      rt = std::max(rt, e.round_trip);
      mod = std::max(mod, e.modulus);
    }
    rec.metric("fields", static_cast<double>(count));
    rec.check_le("max_round_trip_error", rt, tol);
    rec.check_le("max_modulus_error", mod, tol);
    Rng rng = make_rng(seed, 0);
    const GridFunction f = d.is_torus() ? random_smooth_field(d, rng, band)
                                        : random_wave_packets(d, rng, 3);
    rec.field("sample.fd", dump_of(f, 0.0));
    rec.field("sample_gauged.fd", dump_of(gauge_forward(f), 0.0));
    if (bilipschitz) record_probe(rec, gauge_bilipschitz_probe(bl));
  };
}

Action plan_gauge_equivalence(Params& p, std::uint64_t seed) {
  const std::string which = p.choice("domains", std::string("both"), {"torus", "line", "both"});
  const std::size_t n_torus = p.count("torus_n_points", 128, 8);
  const std::size_t n_line = p.count("line_n_points", 512, 8);
  const std::size_t scale = p.count("line_domain_scale", 8);
  if (!power_of_two(n_torus)) p.fail("torus_n_points", "'torus_n_points' must be a power of two");
  if (!power_of_two(n_line)) p.fail("line_n_points", "'line_n_points' must be a power of two");
  if (!power_of_two(scale)) p.fail("line_domain_scale", "'line_domain_scale' must be a power of two");
  const SolverConfig base = parse_solver(p, Domain::torus(n_torus), {1e-4, 0.05, 1.0, 1}, false);
  const double h1 = p.positive("h1_norm", 0.3);
  const int band = static_cast<int>(p.integer("band", 4, 1, static_cast<long>(n_torus / 2 - 1)));
  const double tol = p.positive("tol", 1e-6);
  const double mass_tol = p.positive("mass_tol", 1e-9);
  p.finish();
  return [=](Recorder& rec) {
    std::vector<Domain> domains;
    if (which != "line") domains.push_back(Domain::torus(n_torus));
    if (which != "torus") domains.push_back(Domain::line(n_line, scale));
    for (const Domain& d : domains) {
      const std::string tag = d.is_torus() ? "torus" : "line";
      Rng rng = make_rng(seed, d.is_torus() ? 0 : 1);
      const GridFunction u0 = scale_to_sobolev(
          d.is_torus() ? random_smooth_field(d, rng, band) : random_wave_packets(d, rng, 3), 1.0,
          h1);
      SolverConfig orig = base;
      orig.domain = d;
      SolverConfig gauged = orig;
      gauged.nonlinearity.gauged = true;
      const Trajectory u = solve(u0, orig);
      const Trajectory v = solve(gauge_forward(u0), gauged);
      const Trajectory back = gauge_trajectory_inverse(v);
      const Trajectory fwd = gauge_trajectory(u);
      double sup = 0.0, sup_fwd = 0.0, apart = 0.0;
      std::vector<double> disc;
      for (std::size_t m = 0; m < u.size(); ++m) {
        apart = std::max(apart, l2_norm(v.slices[m] - u.slices[m]));
        disc.push_back(l2_norm(back.slices[m] - u.slices[m]));
        sup = std::max(sup, disc.back());
        sup_fwd = std::max(sup_fwd, l2_norm(fwd.slices[m] - v.slices[m]));
      }
      rec.metric(tag + ".initial_h1", sobolev_norm(u0, 1.0));
      rec.check_le(tag + ".sup_l2_discrepancy", sup, tol);
      rec.metric(tag + ".sup_l2_discrepancy_gauged_side", sup_fwd);
      // Size of the gauge itself, for scale.
      rec.metric(tag + ".sup_l2_distance_u_v", apart);
      rec.check_le(tag + ".mass_drift_original", relative_mass_drift(u), mass_tol);
      rec.check_le(tag + ".mass_drift_gauged", relative_mass_drift(v), mass_tol);
      rec.series(tag + "_discrepancy", "t", u.times, "l2_discrepancy", disc);
      rec.field(tag + "_final_original.fd", dump_of(u.slices.back(), u.times.back()));
      rec.field(tag + "_final_gauged.fd", dump_of(v.slices.back(), v.times.back()));
    }
  };
}

Action plan_plane_wave(Params& p, std::uint64_t) {
  const std::size_t n = p.count("n_points", 256, 8);
  if (!power_of_two(n)) p.fail("n_points", "'n_points' must be a power of two >= 8");
  const double A = p.positive("amplitude", 0.5);
  const long mode = p.integer("mode", 1, -static_cast<long>(n / 2 - 1), static_cast<long>(n / 2 - 1));
  const SolverConfig cfg = parse_solver(p, Domain::torus(n), {}, false);
  const double tol = p.positive("tol", 1e-8);
  const double improvement = p.positive("improvement", 8.0);
  const double floor = p.positive("floor", 1e-12);
  const double mass_tol = p.positive("mass_tol", 1e-9);
  const bool order_check = p.flag("order_check", true);
  const std::vector<double> order_dts = p.numbers("order_dts", {0.02, 0.01, 0.005});
  for (double h : order_dts)
    if (!(h > 0.0)) p.fail("order_dts", "'order_dts' entries must be positive");
  const double order_h1 = p.positive("order_h1_norm", 1.0);
  p.finish();
  return [=](Recorder& rec) {
    const Domain d = cfg.domain;
    const double a2 = A * A;
    const double m = static_cast<double>(mode);
    const double omega = m * m - m * a2 +
                         cfg.nonlinearity.lambda * std::pow(a2, cfg.nonlinearity.k_power);
    auto wave = [&](double t) {
      std::vector<Complex> v(d.size());
      for (std::size_t j = 0; j < d.size(); ++j) v[j] = std::polar(A, m * d.x(j) - omega * t);
      return GridFunction(d, std::move(v));
    };
    rec.metric("omega", omega);
    std::vector<double> errors, dts;
    for (int halvings = 0; halvings < 2; ++halvings) {
      SolverConfig c = cfg;
      c.dt = cfg.dt / std::pow(2.0, halvings);
      c.record_every = c.steps();
      const Trajectory u = solve(wave(0.0), c);
      const GridFunction exact = wave(u.times.back());
      errors.push_back(l2_norm(u.slices.back() - exact) / l2_norm(exact));
      dts.push_back(c.dt);
      if (halvings == 0) {
        SolverConfig full = cfg;
        const Trajectory all = solve(wave(0.0), full);
        rec.check_le("relative_mass_drift", relative_mass_drift(all), mass_tol);
      }
    }
    rec.check_le("relative_l2_error", errors[0], tol);
    rec.metric("relative_l2_error_half_dt", errors[1]);
    rec.series("plane_wave_error", "dt", dts, "relative_l2_error", errors);
    rec.check("halving_dt_improves_8x_or_at_floor",
              errors[0] <= floor || errors[0] >= improvement * errors[1]);

    if (order_check && order_dts.size() >= 2) {
      // Fourth order on data where the nonlinearity matters.
      const Domain dd = Domain::torus(64);
      Rng rng = make_rng(7, 0);
      const GridFunction u0 = scale_to_sobolev(random_smooth_field(dd, rng, 6), 1.0, order_h1);
      SolverConfig c = cfg;
      c.domain = dd;
      c.t_final = 0.2;
      const double h_min = *std::min_element(order_dts.begin(), order_dts.end());
      c.dt = h_min / 16.0;
      c.record_every = c.steps();
      const GridFunction ref = solve(u0, c).slices.back();
      std::vector<double> errs;
      for (double h : order_dts) {
        c.dt = h;
        c.record_every = c.steps();
        errs.push_back(l2_norm(solve(u0, c).slices.back() - ref) / l2_norm(ref));
      }
      rec.series("order_check_error", "dt", order_dts, "relative_l2_error", errs);
      double min_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 1; i < errs.size(); ++i) {
        const double r = errs[i - 1] / errs[i];
        rec.metric("order_check.ratio_" + std::to_string(i), r);
        if (errs[i - 1] > floor) min_ratio = std::min(min_ratio, r);
      }
      rec.metric("order_check.error_coarse", errs.front());
      if (std::isfinite(min_ratio)) rec.check_ge("order_check.min_ratio_above_floor", min_ratio, improvement);
    }
  };
}

Action plan_scaling(Params& p, std::uint64_t seed) {
  const Domain d = parse_domain(p, "line", 256, 4);
  if (d.is_torus()) p.fail("domain", "the scaling law is checked on the line");
  const SolverConfig cfg = parse_solver(p, d, {1e-3, 0.05, 0.0, 2}, false);
  if (cfg.nonlinearity.lambda != 0.0 && cfg.nonlinearity.k_power != 2)
    p.fail("k_power", "scaling symmetry needs lambda = 0 or k_power = 2");
  const InitialSpec init = parse_initial(p, d);
  std::vector<std::size_t> sigmas = p.counts("sigmas", {2, 4});
  for (auto s : sigmas)
    if (!power_of_two(s) || s < 2) p.fail("sigmas", "'sigmas' entries must be powers of two >= 2");
  const double tol = p.positive("tol", 1e-12);
  p.finish();
  return [=](Recorder& rec) {
    const GridFunction u0 = make_initial(init, d, seed);
    const Trajectory u = solve(u0, cfg);
    const double norm0 = l2_norm(u0);
    for (std::size_t sigma : sigmas) {
      const double s2 = static_cast<double>(sigma * sigma);
      SolverConfig cs = cfg;
      cs.domain = Domain::line(d.size(), d.domain_scale() * sigma);
      cs.dt = cfg.dt * s2;
      cs.t_final = cfg.t_final * s2;
      const Trajectory us = solve(rescale(u0, sigma), cs);
      const Trajectory ur = rescale(u, sigma);
      double norm_gap = 0.0, field_gap = 0.0, time_gap = 0.0;
      for (std::size_t m = 0; m < u.size(); ++m) {
        norm_gap = std::max(norm_gap, std::abs(l2_norm(us.slices[m]) - l2_norm(u.slices[m])));
        field_gap = std::max(field_gap, max_abs_difference(us.slices[m], ur.slices[m]));
        time_gap = std::max(time_gap, std::abs(us.times[m] - s2 * u.times[m]));
      }
      const std::string tag = "sigma_" + std::to_string(sigma);
      rec.check_le(tag + ".relative_norm_gap", norm_gap / norm0, tol);
      rec.metric(tag + ".max_field_gap", field_gap / max_abs(ur.slices.front()));
      rec.metric(tag + ".time_gap", time_gap);
    }
  };
}

Action plan_flowmap(Params& p, std::uint64_t seed) {
  FlowmapSpec s;
  s.radius = p.positive("radius", s.radius);
  s.epsilons = p.numbers("epsilons", s.epsilons);
  for (double e : s.epsilons)
    if (!(e > 0.0)) p.fail("epsilons", "'epsilons' entries must be positive (v0 = u0 is excluded)");
  if (s.epsilons.size() < 2) p.fail("epsilons", "'epsilons' needs at least two values");
  s.ensemble = p.count("ensemble", s.ensemble);
  s.n_points = p.count("n_points", s.n_points, 16);
  if (!power_of_two(s.n_points)) p.fail("n_points", "'n_points' must be a power of two");
  s.band = static_cast<int>(p.integer("band", s.band, 1, static_cast<long>(s.n_points / 4)));
  s.dt = p.positive("dt", s.dt);
  s.t_final = p.number("t_final", s.t_final, std::nullopt, 1.0);
  if (!(s.t_final > 0.0)) p.fail("t_final", "'t_final' must be positive");
  if (s.dt > s.t_final) p.fail("dt", "'dt' must not exceed 't_final'");
  s.lambda = p.number("lambda", s.lambda);
  s.k_power = static_cast<int>(p.integer("k_power", s.k_power, 0, 8));
  s.gauged_comparison = p.flag("gauged_comparison", s.gauged_comparison);
  s.seed = seed;
  p.finish();
  return [s](Recorder& rec) {
    const ProbeReport r = flowmap_experiment(s);
    for (const auto& [k, v] : r.metrics) rec.metric(k, v);
    rec.probe(r);
  };
}

Action plan_resonance(Params& p, std::uint64_t seed) {
  const std::string lattice = p.choice("lattice", std::string("both"), {"Z", "R", "both"});
  const std::size_t samples = p.count("samples", 1000000);
  const double box = p.positive("box", 1000.0);
  const double tol = p.positive("tol", 1e-9);
  p.finish();
  return [=](Recorder& rec) {
    for (Lattice l : {Lattice::Integer, Lattice::Real}) {
      if (lattice != "both" && lattice != to_string(l)) continue;
      ProbeReport r = resonance_probe(l, samples, box, seed);
      r.name += std::string("-") + to_string(l);
      rec.check_le(r.name + ".max_relative_residual", r.sup_ratio, tol);
      rec.check_le(r.name + ".max_bound_violations", r.metrics["max_bound_violations"], 0.0);
      rec.probe(r);
    }
  };
}

Action plan_domination(Params& p, std::uint64_t seed) {
  const std::string family = p.choice("family", std::string("both"), {"M", "M~", "both"});
  const std::string lattice = p.choice("lattice", std::string("both"), {"Z", "R", "both"});
  DominationSpec base;
  base.box = p.positive("box", base.box);
  base.samples = p.count("samples", base.samples, 10000);
  base.delta = p.number("delta", base.delta);
  if (!(base.delta > 0.0 && base.delta < 1.0 / 6.0)) p.fail("delta", "'delta' must lie in (0, 1/6)");
  if (p.has("case")) {
    const std::string c = p.choice(
        "case", std::nullopt,
        {"i", "ii", "iii-a", "iii-b", "iii-c", "iii-d", "iv-a", "iv-b", "iv-c", "iv-d"});
    for (TrilinearCase t : all_cases())
      if (c == to_string(t)) base.only_case = t;
  }
  base.seed = seed;
  p.finish();
  return [=](Recorder& rec) {
    for (bool tilde : {false, true}) {
      if (family == "M" && tilde) continue;
      if (family == "M~" && !tilde) continue;
      for (Lattice l : {Lattice::Integer, Lattice::Real}) {
        if (lattice != "both" && lattice != to_string(l)) continue;
        DominationSpec s = base;
        s.tilde = tilde;
        s.lattice = l;
        ProbeReport r = domination_probe(s);
        r.name += std::string("-") + to_string(l);
        rec.metric(r.name + ".sup_ratio_box", r.metrics["sup_ratio_box"]);
        rec.metric(r.name + ".sup_ratio_2box", r.metrics["sup_ratio_2box"]);
        rec.check(r.name + ".finite", std::isfinite(r.sup_ratio));
        rec.check(r.name + ".stable_under_box_doubling", r.stable);
        rec.probe(r);
      }
    }
    rec.note("sampling measure: frequencies log-uniform in magnitude up to the box, "
             "modulations log-uniform in [1e-3, box^2]; case quotas per chunk of 1000");
  };
}

Action plan_strichartz(Params& p, std::uint64_t seed) {
  StrichartzSpec s;
  s.b = p.number("b", s.b);
  if (!(s.b > 0.375)) p.fail("b", "'b' must exceed 3/8");
  s.ensemble = p.count("ensemble", s.ensemble);
  s.n_points = p.counts("n_points", s.n_points);
  for (auto n : s.n_points)
    if (!power_of_two(n) || n < 16) p.fail("n_points", "'n_points' entries must be powers of two >= 16");
  s.n_times = p.count("n_times", s.n_times, 3);
  if (s.n_times % 2 == 0) p.fail("n_times", "'n_times' must be odd");
  s.seed = seed;
  p.finish();
  return [s](Recorder& rec) {
    const ProbeReport r = strichartz_probe(s);
    rec.metric("single_mode_spread", r.metrics.at("single_mode_spread"));
    rec.check(r.name + ".stable", r.stable);
    record_probe(rec, r);
  };
}

void record_t_probe(Recorder& rec, const ProbeReport& r) {
  for (const auto& [k, v] : r.series)
    if (k == "sup_ratio")
      for (std::size_t i = 0; i < v.size(); ++i)
        rec.metric(r.name + ".sup_ratio_T" + std::to_string(i), v[i]);
  rec.check(r.name + ".non_increasing_in_T", r.stable);
  record_probe(rec, r);
}

Action plan_trilinear(Params& p, std::uint64_t seed) {
  const SpaceTimeProbeSpec s = parse_space_time(p, seed);
  p.finish();
  return [s](Recorder& rec) { record_t_probe(rec, trilinear_probe(s)); };
}

Action plan_multilinear(Params& p, std::uint64_t seed) {
  SpaceTimeProbeSpec s = parse_space_time(p, seed);
  const auto ks = p.numbers("k_values", {0, 1, 2});
  for (double k : ks)
    if (k != 0.0 && k != 1.0 && k != 2.0) p.fail("k_values", "'k_values' entries must be 0, 1 or 2");
  const bool quintic = p.flag("quintic", true);
  const double delta = p.number("delta", 1.0 / 16.0);
  if (!(delta > 0.0 && delta < 0.125)) p.fail("delta", "'delta' must lie in (0, 1/8)");
  p.finish();
  return [=](Recorder& rec) {
    for (double k : ks) {
      const ProbeReport r = multilinear_probe(static_cast<int>(k), s, delta);
      if (k == 0.0) rec.check_le(r.name + ".max_ratio_X", r.metrics.at("max_ratio_X"), 1.0);
      record_t_probe(rec, r);
    }
    if (quintic) record_t_probe(rec, quintic_probe(s, delta));
  };
}

Action plan_smult(Params& p, std::uint64_t seed) {
  SobolevMultSpec s;
  s.s = p.number("s", s.s);
  s.s1 = p.number("s1", s.s1);
  s.s2 = p.number("s2", s.s2);
  if (s.s < 0.0 || s.s1 < s.s || s.s2 < s.s || !(s.s1 + s.s2 - s.s > 0.5))
    p.fail("s", "need s >= 0, s1 >= s, s2 >= s and s1 + s2 - s > 1/2");
  s.ensemble = p.count("ensemble", s.ensemble);
  s.n_points = p.counts("n_points", s.n_points);
  for (auto n : s.n_points)
    if (!power_of_two(n) || n < 16) p.fail("n_points", "'n_points' entries must be powers of two >= 16");
  s.seed = seed;
  p.finish();
  return [s](Recorder& rec) {
    const ProbeReport r = sobolev_mult_probe(s);
    rec.check(r.name + ".stable", r.stable);
    record_probe(rec, r);
  };
}

Action plan_dyadic(Params& p, std::uint64_t seed) {
  const double delta = p.positive("delta", 0.25);
  const double s = p.number("s", 0.5);
  const double b = p.number("b", 0.5);
  const double c_sim = p.number("C", 2.0);
  if (!(c_sim > 1.0)) p.fail("C", "'C' must exceed 1");
  const std::size_t k = p.count("k", 8);
  const std::size_t fields = p.count("fields", 20);
  const std::size_t n = p.count("n_points", 32, 8);
  if (!power_of_two(n)) p.fail("n_points", "'n_points' must be a power of two >= 8");
  const std::size_t n_times = p.count("n_times", 257, 3);
  if (n_times % 2 == 0) p.fail("n_times", "'n_times' must be odd");
  const std::size_t embedding_count = p.count("embedding_count", 1000, 0);
  const std::vector<double> embedding_s = p.numbers("embedding_s", {0.5, 1.0});
  const double embedding_c = p.positive("embedding_constant", 2.0);
  const std::size_t xy_count = p.count("xy_count", 100, 0);
  const double b1 = p.number("b1", -1.0);
  const double b2 = p.number("b2", -0.375 - 1.0 / 16.0);
  if (!(b2 > b1 + 0.5)) p.fail("b2", "'b2' must exceed b1 + 1/2");
  p.finish();
  return [=](Recorder& rec) {
    const Domain d = Domain::torus(n);
    const int band = static_cast<int>(n / 2 - 1);
    // Dyadic sums on windowed wave sums.
    const auto reports = parallel_map(fields, [&](std::size_t i) {
      Rng rng = make_rng(seed, i);
      const WaveSum w = draw_wave_sum(rng, band, 1, 8.0, false);
      return dyadic_sum_check(wave_sum_field(w, d, n_times, TimeWindow::bump(1.0)), delta, s, b,
                              c_sim, k);
    });
    std::map<std::string, double> worst;
    bool all = true;
    for (const auto& r : reports) {
      all = all && r.passed;
      for (const auto& [key, v] : r.metrics)
        if (key.ends_with("_ratio") || key == "XXX_blocks_above_one")
          worst[key] = std::max(worst[key], v);
    }
    for (const auto& [key, v] : worst) rec.metric("dyadic." + key, v);
    rec.check("dyadic.inequalities_hold", all);
    if (!reports.empty()) rec.probe(reports.front());

    // H^s into B^s_{2,inf}.
    if (embedding_count > 0) {
      const Domain de = Domain::torus(256);
      const auto ratios = parallel_map(embedding_count, [&](std::size_t i) {
        Rng rng = make_rng(seed, 1000000 + i);
        std::uniform_int_distribution<int> bd(1, 127);
        std::uniform_real_distribution<double> dec(0.0, 2.0);
        const GridFunction f = random_smooth_field(de, rng, bd(rng), dec(rng));
        double worst_ratio = 0.0;
        for (double sv : embedding_s)
          worst_ratio = std::max(worst_ratio, besov_norm(f, {sv, BesovQ::Infinity}) / sobolev_norm(f, sv));
        return worst_ratio;
      });
      rec.check_le("embedding.max_besov_over_sobolev", max_of(ratios), embedding_c);
    }

    // Y^{s,b1} <= C X^{s,b2} with the lattice Cauchy-Schwarz constant.
    if (xy_count > 0) {
      struct XY {
        double ratio, constant;
      };
      const auto xy = parallel_map(xy_count, [&](std::size_t i) {
        Rng rng = make_rng(seed, 2000000 + i);
        std::normal_distribution<double> g(0.0, 1.0);
        std::uniform_real_distribution<double> dec(0.0, 2.0);
        const double decay = dec(rng);
        SpaceTimeField u = SpaceTimeField::zeros(d, n_times, 2.0 * 3.141592653589793 / n_times, -3.141592653589793);
        for (std::size_t m = 0; m < n_times; ++m)
          for (std::size_t j = 0; j < n; ++j)
            u.at(m, j) = std::pow(bracket(u.tau(m)), -decay) * Complex(g(rng), g(rng));
        const double C = xy_embedding_constant(u, b1, b2);
        return XY{ysb_norm(u, s, b1) / (C * xsb_norm(u, {s, b2, ModulationSign::Plus})), C};
      });
      double worst_xy = 0.0, c_max = 0.0;
      for (const auto& e : xy) {
        worst_xy = std::max(worst_xy, e.ratio);
        c_max = std::max(c_max, e.constant);
      }
      rec.metric("xy.max_constant", c_max);
      rec.check_le("xy.max_ratio_over_constant", worst_xy, 1.0 + 1e-12);
    }
  };
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{
      "solve",           "gauge-roundtrip",   "gauge-equivalence", "plane-wave",
      "scaling",         "flowmap",           "verify-resonance",  "verify-domination",
      "probe-strichartz", "probe-trilinear",  "probe-multilinear", "probe-smult",
      "dyadic-checks"};
  return names;
}

bool is_scenario(const std::string& name) {
  const auto& n = scenario_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

Action plan_scenario(const std::string& scenario, Params& p, std::uint64_t seed) {
  using Planner = Action (*)(Params&, std::uint64_t);
  static const std::map<std::string, Planner> planners{
      {"solve", plan_solve},
      {"gauge-roundtrip", plan_gauge_roundtrip},
      {"gauge-equivalence", plan_gauge_equivalence},
      {"plane-wave", plan_plane_wave},
      {"scaling", plan_scaling},
      {"flowmap", plan_flowmap},
      {"verify-resonance", plan_resonance},
      {"verify-domination", plan_domination},
      {"probe-strichartz", plan_strichartz},
      {"probe-trilinear", plan_trilinear},
      {"probe-multilinear", plan_multilinear},
      {"probe-smult", plan_smult},
      {"dyadic-checks", plan_dyadic}};
  const auto it = planners.find(scenario);
  if (it == planners.end()) throw ParameterError("unknown scenario '" + scenario + "'");
  return it->second(p, seed);
}

ProbeReport flowmap_experiment(const FlowmapSpec& spec) {
  if (!(spec.radius > 0.0)) throw ParameterError("radius must be positive");
  if (spec.epsilons.size() < 2) throw ParameterError("need at least two epsilon values");
  for (double e : spec.epsilons)
    if (!(e > 0.0)) throw ParameterError("epsilon must be positive");
  if (!(spec.t_final > 0.0 && spec.t_final <= 1.0)) throw ParameterError("T must lie in (0, 1]");
  if (spec.ensemble == 0) throw ParameterError("ensemble must be positive");

  const Domain d = Domain::torus(spec.n_points);
  SolverConfig cfg;
  cfg.domain = d;
  cfg.dt = spec.dt;
  cfg.t_final = spec.t_final;
  cfg.nonlinearity = {spec.lambda, spec.k_power, false};
  cfg.validate();
  SolverConfig gcfg = cfg;
  gcfg.nonlinearity.gauged = true;
  const BesovParams half{0.5, BesovQ::Infinity};
  const std::size_t n_eps = spec.epsilons.size();

  auto sup_ratio = [&](const Trajectory& a, const Trajectory& b) {
    double sup = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m)
      sup = std::max(sup, besov_norm(a.slices[m] - b.slices[m], half));
    return sup / besov_norm(a.slices.front() - b.slices.front(), half);
  };

  struct Draw {
    std::vector<double> L, Lg;
    double u0_norm = 0.0;
  };
  const auto draws = parallel_map(spec.ensemble, [&](std::size_t i) {
    Rng rng = make_rng(spec.seed, i);
    std::uniform_real_distribution<double> u(0.2, 0.9);
    const GridFunction u0 =
        scale_to_besov(random_smooth_field(d, rng, spec.band), 0.5, spec.radius * u(rng));
    const GridFunction phi = scale_to_besov(random_smooth_field(d, rng, spec.band), 0.5, 1.0);
    Draw out;
    out.u0_norm = besov_norm(u0, half);
    const Trajectory tu = solve(u0, cfg);
    std::optional<Trajectory> tg;
    if (spec.gauged_comparison) tg = solve(gauge_forward(u0), gcfg);
    for (double eps : spec.epsilons) {
      const GridFunction v0 = u0 + Complex(eps) * phi;
      out.L.push_back(sup_ratio(tu, solve(v0, cfg)));
      if (tg) out.Lg.push_back(sup_ratio(*tg, solve(gauge_forward(v0), gcfg)));
    }
    return out;
  });

  ProbeReport rep;
  rep.name = "flowmap";
  rep.samples = spec.ensemble;
  rep.params = {{"radius", spec.radius},
                {"T", spec.t_final},
                {"dt", spec.dt},
                {"n_points", static_cast<double>(spec.n_points)},
                {"band", static_cast<double>(spec.band)},
                {"lambda", spec.lambda},
                {"k_power", static_cast<double>(spec.k_power)}};
  std::vector<double> sup_L(n_eps, 0.0), sup_Lg(n_eps, 0.0);
  double worst_spread = 0.0, worst_gauge = 1.0, max_norm = 0.0;
  bool ok = true;
  for (const auto& dr : draws) {
    max_norm = std::max(max_norm, dr.u0_norm);
    const double spread = max_of(dr.L) / median(dr.L);
    worst_spread = std::max(worst_spread, spread);
    ok = ok && spread <= 2.0;
    for (std::size_t e = 0; e < n_eps; ++e) {
      sup_L[e] = std::max(sup_L[e], dr.L[e]);
      if (!dr.Lg.empty()) {
        sup_Lg[e] = std::max(sup_Lg[e], dr.Lg[e]);
        const double q = dr.L[e] / dr.Lg[e];
        worst_gauge = std::max({worst_gauge, q, 1.0 / q});
      }
    }
  }
  rep.series.push_back({"epsilon", spec.epsilons});
  rep.series.push_back({"sup_L", sup_L});
  if (spec.gauged_comparison) rep.series.push_back({"sup_L_gauged", sup_Lg});
  rep.sup_ratio = max_of(sup_L);
  rep.metrics["max_L"] = rep.sup_ratio;
  rep.metrics["worst_max_over_median"] = worst_spread;
  rep.metrics["max_initial_besov_norm"] = max_norm;
  if (spec.gauged_comparison) {
    rep.metrics["worst_gauged_factor"] = worst_gauge;
    ok = ok && worst_gauge <= 4.0;
  }
  rep.stable = worst_spread <= 2.0;
  rep.passed = ok && std::isfinite(rep.sup_ratio) && max_norm < spec.radius;
  rep.notes.push_back("per draw: max over eps of L(eps) <= 2 * median over eps");
  return rep;
}

}  // namespace dnls::cli
