#pragma once

// Random test data: smooth fields, localized packets for the line, and
// windowed wave sums for the space-time probes. Every sampler takes an
// explicit engine so runs are reproducible from the seed.

#include <cstdint>
#include <random>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/spaces.hpp"
#include "dnls/spacetime.hpp"

namespace dnls {

using Rng = std::mt19937_64;

// Independent stream `index` derived from `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t index);

// Log-uniform magnitude in [lo, hi].
double log_uniform(Rng& rng, double lo, double hi);

// Trigonometric polynomial with modes |m| <= band, Gaussian coefficients
// damped by <m>^{-decay}. On the line the modes are the lattice frequencies.
GridFunction random_smooth_field(const Domain& d, Rng& rng, int band,
                                 double decay = 1.0);

// Sum of `packets` Gaussian wave packets with centres in the middle half of
// the line box; widths are chosen so the data is below 1e-10 at the edges.
GridFunction random_wave_packets(const Domain& d, Rng& rng, int packets);

// f scaled so that ||f||_{H^s} = target (or B^s_{2,inf}).
GridFunction scale_to_sobolev(const GridFunction& f, double s, double target);
GridFunction scale_to_besov(const GridFunction& f, double s, double target);

// u(x,t) = sum_i a_i e^{i(m_i x - t(xi_i^2 + sigma_i))}, or its conjugate.
// Plus-type sums sit near tau = -xi^2, conjugate ones near tau = xi^2.
struct WaveSum {
  std::vector<long> modes;
  std::vector<double> offsets;  // sigma_i
  std::vector<Complex> amplitudes;
  bool conjugated = false;
};

// `per_mode` terms for every |m| <= band, offsets uniform in
// [-max_offset, max_offset].
WaveSum draw_wave_sum(Rng& rng, int band, int per_mode, double max_offset,
                      bool conjugated);

// Samples of w(t) u(x,t) at t_m = -pi + 2 pi m / n_times (n_times odd, so
// dtau = 1), row-major [time][space].
std::vector<Complex> wave_sum_samples(const WaveSum& s, const Domain& d,
                                      std::size_t n_times, const TimeWindow& w);
double wave_sum_dt(std::size_t n_times);
double wave_sum_t0();
SpaceTimeField wave_sum_field(const WaveSum& s, const Domain& d,
                              std::size_t n_times, const TimeWindow& w);

}  // namespace dnls
