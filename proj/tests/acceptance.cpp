// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dnls/cli/run.hpp"
#include "dnls/cli/schema.hpp"
#include "dnls/nonlinear.hpp"
#include "dnls/sampling.hpp"
#include "dnls/solver.hpp"

using namespace dnls;
using nlohmann::json;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json run_scenario(const std::string& scenario, const json& params, Verdict& v) {
  const json cfg = {{"scenario", scenario}, {"seed", 20240}, {"parameters", params}};
  const cli::RunOutcome r =
      cli::run_experiment(scenario, cli::ConfigDoc::from_json(cfg), std::nullopt, "", false);
  v.require(r.exit_code == cli::kPass, scenario + " exit " + std::to_string(r.exit_code) +
                                           (r.message.empty() ? "" : ": " + r.message));
  return r.report.is_null() ? json::object() : json(r.report);
}

double metric(const json& report, const std::string& key) {
  if (!report.contains("metrics") || !report["metrics"].contains(key)) return NAN;
  const auto& m = report["metrics"][key];
  return m.is_number() ? m.get<double>() : NAN;
}

int failures = 0;

void criterion(const char* id, const char* title, double limit_s,
               const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  const double secs = seconds_since(t0);
  if (limit_s > 0.0 && secs >= limit_s) {
    v.ok = false;
    v.detail << " [runtime " << secs << " s over " << limit_s << " s]";
  }
  if (!v.ok) ++failures;
  std::printf("%s %s %s (%.1f s)%s\n", id, v.ok ? "PASS" : "FAIL", title, secs, v.detail.str().c_str());
  std::fflush(stdout);
}

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) e = std::max(e, std::abs(a.coeffs[k] - b.coeffs[k]));
  return e;
}

std::vector<json> mass_reports;

}  // namespace

int main() {
  criterion("A1", "resonance identity, 1e6 points per lattice", 10.0, [](Verdict& v) {
    const json r = run_scenario("verify-resonance",
                                {{"lattice", "both"}, {"samples", 1000000}, {"box", 1000.0}, {"tol", 1e-9}}, v);
    for (const char* l : {"Z", "R"}) {
      const double res = metric(r, std::string("resonance-") + l + ".max_relative_residual");
      v.detail << " " << l << " residual " << res;
      v.require(res <= 1e-9, std::string("residual on ") + l);
    }
  });

  criterion("A2", "plane-wave exactness and step halving", 30.0, [](Verdict& v) {
    const json r = run_scenario("plane-wave",
                                {{"n_points", 256}, {"amplitude", 0.5}, {"mode", 1}, {"dt", 1e-4},
                                 {"t_final", 0.1}, {"tol", 1e-8}, {"improvement", 8.0}},
                                v);
    mass_reports.push_back(r);
    v.detail << " error " << metric(r, "relative_l2_error") << ", min order ratio "
             << metric(r, "order_check.min_ratio_above_floor");
    v.require(std::abs(metric(r, "omega") - 0.75) < 1e-15, "omega");

    // Direct solve against the closed form with omega = 1 - 1/4.
    SolverConfig c;
    c.domain = Domain::torus(256);
    c.dt = 1e-4;
    c.t_final = 0.1;
    GridFunction u0 = GridFunction::zeros(c.domain), exact = u0;
    for (std::size_t j = 0; j < c.domain.size(); ++j) {
      u0.values[j] = 0.5 * std::exp(Complex(0.0, c.domain.x(j)));
      exact.values[j] = 0.5 * std::exp(Complex(0.0, c.domain.x(j) - 0.75 * 0.1));
    }
    const Trajectory t = solve(u0, c);
    const double err = l2_norm(t.slices.back() - exact) / l2_norm(exact);
    v.detail << ", direct error " << err;
    v.require(err < 1e-8, "direct error");
  });

  criterion("A3", "gauge equivalence on torus and line", 120.0, [](Verdict& v) {
    const json r = run_scenario("gauge-equivalence", {{"domains", "both"}, {"h1_norm", 0.3}, {"tol", 1e-6}}, v);
    mass_reports.push_back(r);
    for (const char* tag : {"torus", "line"}) {
      const double d = metric(r, std::string(tag) + ".sup_l2_discrepancy");
      v.detail << " " << tag << " " << d;
      v.require(d < 1e-6, std::string(tag) + " discrepancy");
      v.require(metric(r, std::string(tag) + ".initial_h1") <= 0.3 + 1e-12, "initial H1 norm");
    }
  });

  criterion("A4", "gauge round trip and modulus on 100 fields", 5.0, [](Verdict& v) {
    const json r = run_scenario("gauge-roundtrip", {{"count", 100}, {"tol", 1e-12}}, v);
    v.detail << " round trip " << metric(r, "max_round_trip_error") << ", modulus "
             << metric(r, "max_modulus_error");
  });

  criterion("A5", "mass drift over the plane-wave and gauge runs", 0.0, [](Verdict& v) {
    double worst = 0.0;
    int seen = 0;
    for (const json& r : mass_reports) {
      if (!r.contains("metrics")) continue;
      for (const auto& [k, m] : r["metrics"].items())
        if (k.find("mass_drift") != std::string::npos) {
          const double d = m.is_number() ? m.get<double>() : INFINITY;
          worst = std::max(worst, d);
          ++seen;
        }
    }
    v.detail << " " << seen << " runs, worst " << worst;
    v.require(seen >= 5, "mass drift recorded for every run");
    v.require(worst < 1e-9, "drift");
  });

  criterion("A6", "scaling law for sigma 2 and 4", 0.0, [](Verdict& v) {
    const json r = run_scenario("scaling", {{"sigmas", {2, 4}}, {"tol", 1e-12}}, v);
    for (const char* s : {"sigma_2", "sigma_4"}) {
      const double g = metric(r, std::string(s) + ".relative_norm_gap");
      v.detail << " " << s << " " << g;
      v.require(g <= 1e-12, s);
    }
  });

  criterion("A7", "physical and Fourier nonlinearities agree", 0.0, [](Verdict& v) {
    Rng rng = make_rng(7, 7);
    double worst_t = 0.0, worst_q = 0.0;
    const Domain d32 = Domain::torus(32), d16 = Domain::torus(16);
    for (int i = 0; i < 50; ++i) {
      const GridFunction a = random_smooth_field(d32, rng, 15);
      const GridFunction b = random_smooth_field(d32, rng, 15);
      const GridFunction c = random_smooth_field(d32, rng, 15);
      worst_t = std::max(worst_t, max_coeff_diff(to_spectral(trilinear_T_physical(a, b, c)),
                                                 trilinear_T_fourier(to_spectral(a), to_spectral(b),
                                                                     to_spectral(c))));
      std::vector<GridFunction> f;
      std::vector<SpectralField> s;
      for (int j = 0; j < 5; ++j) {
        f.push_back(random_smooth_field(d16, rng, 7));
        s.push_back(to_spectral(f.back()));
      }
      worst_q = std::max(worst_q, max_coeff_diff(to_spectral(quintic_Q_physical(f[0], f[1], f[2], f[3], f[4])),
                                                 quintic_Q_fourier(s[0], s[1], s[2], s[3], s[4])));
    }
    v.detail << " trilinear " << worst_t << ", quintic " << worst_q;
    v.require(worst_t <= 1e-10, "trilinear");
    v.require(worst_q <= 1e-9, "quintic");
  });

  criterion("A8", "multiplier domination, both families and lattices", 0.0, [](Verdict& v) {
    const json r = run_scenario(
        "verify-domination", {{"family", "both"}, {"lattice", "both"}, {"box", 100.0}, {"samples", 100000}}, v);
    for (const char* fam : {"domination", "domination-tilde"})
      for (const char* l : {"Z", "R"}) {
        const std::string tag = std::string(fam) + "-" + l;
        const double a = metric(r, tag + ".sup_ratio_box"), b = metric(r, tag + ".sup_ratio_2box");
        v.detail << " " << tag << " " << a << "/" << b;
        v.require(std::isfinite(a) && std::isfinite(b), tag + " finite");
        v.require(std::max(a, b) <= 2.0 * std::min(a, b), tag + " within factor 2");
      }
  });

  criterion("A9", "Besov/Sobolev embedding and the XY inequality", 0.0, [](Verdict& v) {
    const json r = run_scenario("dyadic-checks", {{"embedding_count", 1000}, {"xy_count", 100}}, v);
    v.detail << " besov/sobolev " << metric(r, "embedding.max_besov_over_sobolev") << ", XY "
             << metric(r, "xy.max_ratio_over_constant");
    v.require(metric(r, "embedding.max_besov_over_sobolev") <= 2.0, "embedding");
    v.require(metric(r, "xy.max_ratio_over_constant") <= 1.0 + 1e-12, "XY");
  });

  criterion("A10", "Picard contraction and agreement with the stepper", 0.0, [](Verdict& v) {
    SolverConfig c;
    c.domain = Domain::torus(64);
    c.dt = 1e-3;
    c.t_final = 0.05;
    Rng rng = make_rng(10, 0);
    const GridFunction u0 = scale_to_sobolev(random_smooth_field(c.domain, rng, 4), 1.0, 0.1);
    const PicardResult p = picard_iterate(u0, c, 12);
    double worst_ratio = 0.0;
    for (double r : p.ratios) worst_ratio = std::max(worst_ratio, r);
    const Trajectory s = solve(u0, c);
    double gap = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) gap = std::max(gap, l2_norm(s.slices[i] - p.iterate.slices[i]));
    v.detail << " " << p.ratios.size() << " ratios, max " << worst_ratio << ", gap " << gap;
    v.require(!p.ratios.empty() && !p.diverged, "iteration ran");
    v.require(worst_ratio < 0.5, "ratios");
    v.require(gap < 1e-6, "agreement");
  });

  criterion("A11", "flow-map continuity", 0.0, [](Verdict& v) {
    const json r = run_scenario("flowmap", json::object(), v);
    const double spread = metric(r, "worst_max_over_median");
    v.detail << " max L " << metric(r, "max_L") << ", worst max/median " << spread;
    v.require(std::isfinite(metric(r, "max_L")), "L finite");
    v.require(spread <= 2.0, "within factor 2 of the median");
  });

  criterion("A12", "estimate probes non-increasing in T", 600.0, [](Verdict& v) {
    const json t = run_scenario("probe-trilinear", {{"ensemble", 100}}, v);
    const json m = run_scenario("probe-multilinear", {{"ensemble", 100}, {"k_values", {0, 1, 2}}, {"quintic", true}}, v);
    for (const json* r : {&t, &m})
      if (r->contains("metrics"))
        for (const auto& [k, x] : (*r)["metrics"].items())
          if (k.ends_with(".sup_ratio")) {
            const std::string name = k.substr(0, k.size() - 10);
            std::vector<double> by_t;
            for (int i = 0; i < 4; ++i) by_t.push_back(metric(*r, name + ".sup_ratio_T" + std::to_string(i)));
            v.detail << " " << name << " [" << by_t[0] << ", " << by_t[1] << ", " << by_t[2] << ", "
                     << by_t[3] << "]";
            for (int i = 0; i < 4; ++i) v.require(std::isfinite(by_t[i]), name + " finite");
            for (int i = 1; i < 4; ++i) v.require(by_t[i] <= by_t[i - 1], name + " non-increasing");
          }
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
