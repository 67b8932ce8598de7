#pragma once

// Verification harness for the identities and estimates: resonance relation,
// the trilinear multipliers and their pointwise domination, and empirical
// ratio probes for the Strichartz, trilinear, multilinear, dyadic-sum and
// Sobolev-multiplication inequalities.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/sampling.hpp"
#include "dnls/spacetime.hpp"

namespace dnls {

// Y = Z (torus frequencies) or Y = R (line).
enum class Lattice { Integer, Real };
const char* to_string(Lattice l);

// A point (xi, tau, xi_vec, tau_vec) on xi1+xi2+xi3 = xi, tau1+tau2+tau3 = tau.
struct MultiplierPoint {
  double xi = 0.0;
  double tau = 0.0;
  std::array<double, 3> xis{};
  std::array<double, 3> taus{};

  // xi and tau derived from the components, so the point is exact.
  static MultiplierPoint from_components(const std::array<double, 3>& xis,
                                         const std::array<double, 3>& taus);
  // Throws ConstructionError when off the hyperplane beyond rounding.
  static MultiplierPoint checked(double xi, double tau, const std::array<double, 3>& xis,
                                 const std::array<double, 3>& taus);

  // (tau + xi^2, tau1 + xi1^2, tau2 + xi2^2, tau3 - xi3^2)
  std::array<double, 4> modulations() const;
  // Index j of the set A_j holding the point; ties go to the lowest index.
  int a_class() const;
};

struct ResonanceResult {
  double identity_residual = 0.0;  // |combination - 2(xi-xi1)(xi-xi2)|
  double modulus_residual = 0.0;   // |2|(xi-xi1)(xi-xi2)| - 2|xi1+xi3||xi2+xi3||
  double scale = 0.0;              // largest magnitude entering the combination
  bool max_bound = true;           // 4 max A >= 2|xi1+xi3||xi2+xi3|
  double relative() const {
    return std::max(identity_residual, modulus_residual) / (1.0 + scale);
  }
};

ResonanceResult resonance_check(const MultiplierPoint& p);

enum class MultiplierKind { M, M0, M1, M2, M3, M4, Mt, Mt0, Mt1, Mt2, Mt3, Mt4 };
const char* to_string(MultiplierKind k);

constexpr double kDefaultDelta = 1.0 / 24.0;

// Absolute value of the multiplier at p. delta enters Mt0 only and must lie
// in (0, 1/6).
double eval_multiplier(MultiplierKind kind, const MultiplierPoint& p,
                       double delta = kDefaultDelta);

// Case tree of the domination proof:
//   i    |xi| > 2|xi1|, |xi| > 2|xi2|
//   ii   |xi| <= 2|xi1|, |xi| <= 2|xi2|
//   iii  |xi| > 2|xi1|, |xi| <= 2|xi2|, split into
//        a |xi| < 1, b |xi3| < 1, c |xi1| > |xi - xi2|, d remainder
//   iv   the mirror of iii with xi1 and xi2 exchanged
enum class TrilinearCase { I, II, IIIa, IIIb, IIIc, IIId, IVa, IVb, IVc, IVd };
const char* to_string(TrilinearCase c);
TrilinearCase classify_case(const MultiplierPoint& p);
const std::vector<TrilinearCase>& all_cases();

// Frequencies log-uniform in magnitude up to `box` (rounded on Z), several
// parameterizations mixed so that every case and A_j class is reached;
// modulations log-uniform in [1e-3, box^2] with random sign.
MultiplierPoint sample_multiplier_point(Rng& rng, Lattice lattice, double box);

struct ProbeReport {
  std::string name;
  std::size_t samples = 0;
  double sup_ratio = 0.0;
  bool stable = true;
  bool passed = true;
  std::map<std::string, double> params;
  std::map<std::string, double> metrics;
  std::vector<std::pair<std::string, std::vector<double>>> series;
  std::vector<std::string> notes;
};

struct DominationSpec {
  bool tilde = false;  // M-tilde family instead of M
  Lattice lattice = Lattice::Integer;
  double box = 100.0;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  double delta = kDefaultDelta;
  // Restrict to one case; for case ii the ratio uses M4 alone.
  std::optional<TrilinearCase> only_case;
};

struct DominationResult {
  double sup_ratio = 0.0;
  MultiplierPoint argmax{};
  std::map<std::string, double> case_sup;
  std::map<std::string, std::size_t> case_count;
  std::size_t samples = 0;
};

// sup over case-labelled samples of |M| / sum_j M_j (0/0 counted as 0).
DominationResult domination_scan(const DominationSpec& spec);

// Runs domination_scan at box B and 2B and reports both sups.
ProbeReport domination_probe(const DominationSpec& spec);

// Resonance identity on random points.
ProbeReport resonance_probe(Lattice lattice, std::size_t samples, double box,
                            std::uint64_t seed);

struct StrichartzSpec {
  double b = 0.5;
  std::size_t ensemble = 200;
  std::vector<std::size_t> n_points{32, 64};
  std::size_t n_times = 1025;
  std::uint64_t seed = 1;
};

// sup ||u||_{L4} / ||u||_{X^{0,b,+}} over windowed wave sums with band n/8,
// per resolution, plus the single-mode spread across xi0.
ProbeReport strichartz_probe(const StrichartzSpec& spec);

// ||u||_{L4_{t,x}} from space-time samples.
double l4_norm(const std::vector<Complex>& samples, const Domain& d, double dt);

struct SpaceTimeProbeSpec {
  double s = 0.5;
  std::vector<double> T_values{1.0, 0.5, 0.25, 0.125};
  std::size_t ensemble = 100;
  std::size_t n_points = 32;
  std::size_t n_times = 1025;
  int band = 5;
  int per_mode = 2;
  double max_offset = 16.0;
  // Offsets divided by T, so the field at T is one time profile compressed
  // into [-T, T]. Off: the same offsets for every T.
  bool scale_offsets = true;
  std::uint64_t seed = 1;
};

// Ratio of ||T(u1,u2,u3)|| in frak-X^{s,-1/2} cap cal-Y^{s,-1} to
// ||u1|| ||u2|| ||u3|| in frak-X^{1/2,1/2} (u3 of minus type). Fields are wave
// sums under the window chi(2t/T), supported in (-T, T); the same draws are
// reused for every T.
ProbeReport trilinear_probe(const SpaceTimeProbeSpec& spec);

// Product of k+1 factors (alternating plus and conjugate type) in
// frak-X^{s,-3/8-delta} cap cal-Y^{s,-1}, against
// sum_l ||u_l||_{frak-X^{s,1/2}} prod_{j != l} ||u_j||_{frak-X^{1/2,1/2}}.
ProbeReport multilinear_probe(int k, const SpaceTimeProbeSpec& spec,
                              double delta = 1.0 / 16.0);
// Same protocol for Q(u1, conj u2, u3, conj u4, u5).
ProbeReport quintic_probe(const SpaceTimeProbeSpec& spec, double delta = 1.0 / 16.0);

// Dyadic summation inequalities with explicit constants:
//   X:   sum_N N^{-delta} ||P_N u||_{X^{s,b}} <= (sum_N N^{-delta}) ||u||_{frak-X^{s,b}}
//   Y:   sum_N ||P_N u||_{X^{s,b}} <= (1 + sum_{N>1} <N/2>^{-delta}) ||u||_{frak-X^{s+delta,b}}
//   XX:  sum_{N/C <= N1 <= C N} ||P_N1 u|| <= (2 floor(log2 C) + 1) ||u||_{frak-X}
//   XXX: sum_{N <= k} ||P_N u|| <= max(1, floor(log2 k)) ||u||_{frak-X}
ProbeReport dyadic_sum_check(const SpaceTimeField& u, double delta, double s, double b,
                             double c_sim = 2.0, std::size_t k = 8);

struct SobolevMultSpec {
  double s = 0.5;
  double s1 = 0.75;
  double s2 = 0.75;
  std::size_t ensemble = 200;
  std::vector<std::size_t> n_points{256, 512};
  std::uint64_t seed = 1;
};

// sup ||f1 f2||_{B^s} / (||f1||_{B^s1} ||f2||_{B^s2}); ParameterError unless
// s >= 0, s1, s2 >= s and s1 + s2 - s > 1/2.
ProbeReport sobolev_mult_probe(const SobolevMultSpec& spec);

struct BilipschitzSpec {
  double radius = 1.0;
  std::size_t ensemble = 200;
  std::vector<std::size_t> n_points{64, 128};
  std::uint64_t seed = 1;
};

// sup ||G f - G g||_{B^{1/2}} / ||f - g||_{B^{1/2}} over pairs in the ball.
ProbeReport gauge_bilipschitz_probe(const BilipschitzSpec& spec);

// Sup ratio series over T must be non-increasing as T decreases.
bool non_increasing(const std::vector<double>& values, double rel_tol = 1e-12);

}  // namespace dnls
