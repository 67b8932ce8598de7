#include "dnls/sampling.hpp"

#include <cmath>
#include <numbers>

#include "dnls/error.hpp"

namespace dnls {

Rng make_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32), 0x5eedu};
  return Rng(seq);
}

double log_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

GridFunction random_smooth_field(const Domain& d, Rng& rng, int band, double decay) {
  const long half = static_cast<long>(d.size() / 2);
  if (band < 0 || band >= half) throw ParameterError("band must lie in [0, n/2)");
  std::normal_distribution<double> g(0.0, 1.0);
  SpectralField c = SpectralField::zeros(d);
  for (long m = -band; m <= band; ++m) {
    const double w = std::pow(1.0 + static_cast<double>(m * m), -0.5 * decay);
    c.at_wavenumber(m) = w * Complex(g(rng), g(rng));
  }
  return to_grid(c);
}

GridFunction random_wave_packets(const Domain& d, Rng& rng, int packets) {
  if (d.is_torus()) throw DomainError("wave packets are meant for the line");
  const double L = d.period();
  std::uniform_real_distribution<double> centre(-L / 8.0, L / 8.0);
  // Gaussian tail below 1e-12 at the edges, three eighths of L away.
  const double w_max = 0.375 * L / std::sqrt(2.0 * std::log(1e12));
  std::uniform_real_distribution<double> width(0.5 * w_max, w_max);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> wave(-3, 3);
  std::normal_distribution<double> amp(0.0, 1.0);
  std::vector<Complex> v(d.size());
  for (int p = 0; p < packets; ++p) {
    const double c = centre(rng), w = width(rng);
    const double k = wave(rng);
    const Complex a = Complex(amp(rng), amp(rng)) * std::polar(1.0, phase(rng));
    for (std::size_t j = 0; j < d.size(); ++j) {
      const double y = (d.x(j) - c) / w;
      v[j] += a * std::exp(-0.5 * y * y) * std::polar(1.0, k * d.x(j));
    }
  }
  return GridFunction(d, std::move(v));
}

GridFunction scale_to_sobolev(const GridFunction& f, double s, double target) {
  const double n = sobolev_norm(f, s);
  if (n == 0.0) throw ParameterError("cannot scale a zero field");
  return Complex(target / n) * f;
}

GridFunction scale_to_besov(const GridFunction& f, double s, double target) {
  const double n = besov_norm(f, {s, BesovQ::Infinity});
  if (n == 0.0) throw ParameterError("cannot scale a zero field");
  return Complex(target / n) * f;
}

WaveSum draw_wave_sum(Rng& rng, int band, int per_mode, double max_offset,
                      bool conjugated) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> off(-max_offset, max_offset);
  WaveSum s;
  s.conjugated = conjugated;
  for (long m = -band; m <= band; ++m)
    for (int r = 0; r < per_mode; ++r) {
      s.modes.push_back(m);
      s.offsets.push_back(max_offset > 0.0 ? off(rng) : 0.0);
      s.amplitudes.emplace_back(g(rng), g(rng));
    }
  return s;
}

double wave_sum_dt(std::size_t n_times) {
  return 2.0 * std::numbers::pi / static_cast<double>(n_times);
}

double wave_sum_t0() { return -std::numbers::pi; }

std::vector<Complex> wave_sum_samples(const WaveSum& s, const Domain& d,
                                      std::size_t n_times, const TimeWindow& w) {
  const std::size_t n = d.size();
  const double dt = wave_sum_dt(n_times);
  std::vector<Complex> out(n * n_times);
  std::vector<Complex> spatial(s.modes.size() * n);
  for (std::size_t i = 0; i < s.modes.size(); ++i) {
    const double xi = d.dxi() * static_cast<double>(s.modes[i]);
    for (std::size_t j = 0; j < n; ++j) spatial[i * n + j] = std::polar(1.0, xi * d.x(j));
  }
  for (std::size_t m = 0; m < n_times; ++m) {
    const double t = wave_sum_t0() + dt * static_cast<double>(m);
    const double wt = w(t);
    if (wt == 0.0) continue;
    Complex* row = out.data() + m * n;
    for (std::size_t i = 0; i < s.modes.size(); ++i) {
      const double xi = d.dxi() * static_cast<double>(s.modes[i]);
      const Complex a = wt * s.amplitudes[i] * std::polar(1.0, -t * (xi * xi + s.offsets[i]));
      for (std::size_t j = 0; j < n; ++j) row[j] += a * spatial[i * n + j];
    }
    if (s.conjugated)
      for (std::size_t j = 0; j < n; ++j) row[j] = std::conj(row[j]);
  }
  return out;
}

SpaceTimeField wave_sum_field(const WaveSum& s, const Domain& d, std::size_t n_times,
                              const TimeWindow& w) {
  SpaceTimeField u = space_time_transform(d, n_times, wave_sum_dt(n_times), wave_sum_t0(),
                                          wave_sum_samples(s, d, n_times, w));
  u.window = w.describe();
  return u;
}

}  // namespace dnls
