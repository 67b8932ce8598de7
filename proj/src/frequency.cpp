#include "dnls/frequency.hpp"

#include <cmath>
#include <string>

#include "dnls/error.hpp"

namespace dnls {
namespace {

double transition(double x) noexcept { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double bracket(double a) noexcept { return std::hypot(1.0, a); }

double smooth_cutoff(double xi) noexcept {
  const double r = std::abs(xi);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double up = transition(2.0 - r);
  const double down = transition(r - 1.0);
  return up / (up + down);
}

double annulus_cutoff(double xi, double T) noexcept {
  return smooth_cutoff(xi / T) - smooth_cutoff(2.0 * xi / T);
}

double low_cutoff(double xi, double T) noexcept { return smooth_cutoff(xi / T); }

double interval_cutoff(double xi, double a, double b) {
  if (!(a < b))
    throw InvalidIntervalError("interval needs a < b, got [" + std::to_string(a) +
                               ", " + std::to_string(b) + "]");
  // chi_{[0,1]}(y) = chi(|y - 1/2| + 1/2): 1 on [0,1], 0 outside (-1,2).
  const double y = (xi - a) / (b - a);
  return smooth_cutoff(std::abs(y - 0.5) + 0.5);
}

DyadicIndex::DyadicIndex(std::size_t n) : n_(n) {
  if (n == 0 || (n & (n - 1)) != 0)
    throw InvalidIndexError("dyadic index must be 1 or a power of two, got " +
                            std::to_string(n));
}

double dyadic_weight(double xi, DyadicIndex N) noexcept {
  return N.value() == 1 ? smooth_cutoff(xi) : annulus_cutoff(xi, N.as_double());
}

std::vector<DyadicIndex> dyadic_range(const Domain& d) {
  std::vector<DyadicIndex> out;
  for (std::size_t n = 1; n <= 2 * d.size(); n *= 2) out.emplace_back(n);
  return out;
}

namespace {

template <class Weight>
SpectralField weighted(const SpectralField& f, Weight w) {
  SpectralField out = f;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k)
    out.coeffs[k] *= w(f.domain.frequency(k));
  return out;
}

}  // namespace

SpectralField dyadic_projection(const SpectralField& f, DyadicIndex N) {
  return weighted(f, [N](double xi) { return dyadic_weight(xi, N); });
}

SpectralField bessel_potential(const SpectralField& f, double s) {
  if (s == 0.0) return f;
  return weighted(f, [s](double xi) { return std::pow(bracket(xi), s); });
}

SpectralField interval_projection(const SpectralField& f, double a, double b) {
  interval_cutoff(0.0, a, b);  // validates the interval
  return weighted(f, [a, b](double xi) { return interval_cutoff(xi, a, b); });
}

SpaceTimeField modulation_weight(const SpaceTimeField& u, double s,
                                 ModulationSign sign) {
  SpaceTimeField out = u;
  if (s == 0.0) return out;
  const double sg = sign == ModulationSign::Plus ? 1.0 : -1.0;
  const std::size_t n = u.domain.size();
  for (std::size_t m = 0; m < u.n_times; ++m) {
    const double tau = u.tau(m);
    for (std::size_t k = 0; k < n; ++k) {
      const double xi = u.domain.frequency(k);
      out.at(m, k) *= std::pow(bracket(tau + sg * xi * xi), s);
    }
  }
  return out;
}

SpaceTimeField dyadic_projection(const SpaceTimeField& u, DyadicIndex N) {
  SpaceTimeField out = u;
  const std::size_t n = u.domain.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double w = dyadic_weight(u.domain.frequency(k), N);
    for (std::size_t m = 0; m < u.n_times; ++m) out.at(m, k) *= w;
  }
  return out;
}

}  // namespace dnls
