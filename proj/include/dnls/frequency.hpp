#pragma once

// Smooth cutoffs, Littlewood-Paley blocks, Bessel potentials and modulation
// weights on the discrete lattices.

#include <cstddef>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/spacetime.hpp"

namespace dnls {

// <a> = (1 + a^2)^{1/2}
double bracket(double a) noexcept;

// Master bump chi: 1 on [-1,1], 0 outside (-2,2), smooth and radially
// non-increasing. The transition uses g(x) = exp(-1/x):
//   chi(xi) = g(2-|xi|) / (g(2-|xi|) + g(|xi|-1))  for 1 < |xi| < 2.
double smooth_cutoff(double xi) noexcept;
// chi_T(xi) = chi(xi/T) - chi(2 xi/T), supported in T/2 < |xi| < 2T.
double annulus_cutoff(double xi, double T) noexcept;
// chi_{<=T}(xi) = chi(xi/T).
double low_cutoff(double xi, double T) noexcept;
// Smoothed indicator of [a,b]: 1 on [a,b], 0 outside (2a-b, 2b-a).
double interval_cutoff(double xi, double a, double b);

// Element of D_1 = {1, 2, 4, ...}.
class DyadicIndex {
 public:
  explicit DyadicIndex(std::size_t n);
  std::size_t value() const noexcept { return n_; }
  double as_double() const noexcept { return static_cast<double>(n_); }
  bool operator==(const DyadicIndex&) const = default;
  auto operator<=>(const DyadicIndex&) const = default;

 private:
  std::size_t n_;
};

// chi_{<=1} for N = 1, chi_N otherwise.
double dyadic_weight(double xi, DyadicIndex N) noexcept;

// Blocks 1, 2, ..., 2 * n_points. Higher blocks vanish on the lattice.
std::vector<DyadicIndex> dyadic_range(const Domain& d);

SpectralField dyadic_projection(const SpectralField& f, DyadicIndex N);
SpectralField bessel_potential(const SpectralField& f, double s);
SpectralField interval_projection(const SpectralField& f, double a, double b);

enum class ModulationSign { Plus, Minus };

// Pointwise <tau +- xi^2>^s on the modulation lattice.
SpaceTimeField modulation_weight(const SpaceTimeField& u, double s,
                                 ModulationSign sign);
// P_N acting on the spatial frequency of a space-time field.
SpaceTimeField dyadic_projection(const SpaceTimeField& u, DyadicIndex N);

}  // namespace dnls
