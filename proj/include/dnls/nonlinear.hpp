#pragma once

// Right-hand sides of the original and gauged equations, written as
//   i u_t + u_xx = F(u).
// Products are evaluated on a padded grid (see dealias.hpp); the pad factor
// passed in is raised automatically to cover the product degree.

#include <cstddef>

#include "dnls/config.hpp"
#include "dnls/field.hpp"

namespace dnls {

// i d_x(|u|^2 u) + lambda |u|^{2k} u
GridFunction rhs_original(const GridFunction& u, const NonlinearityConfig& cfg,
                          std::size_t pad_factor = 4);
// -i T(v) - Q(v)/2 + lambda |v|^{2k} v, torus or line variants by domain.
GridFunction rhs_gauged(const GridFunction& v, const NonlinearityConfig& cfg,
                        std::size_t pad_factor = 4);
// Dispatches on cfg.gauged.
GridFunction rhs(const GridFunction& u, const NonlinearityConfig& cfg,
                 std::size_t pad_factor = 4);

// Line: v1 v2 d_x v3.
// Torus: v1 v2 d_x v3 - v1 <v2 d_x v3> - v2 <v1 d_x v3>, <.> the spatial
// mean; this is the constrained lattice sum with the diagonal term. T(v) is
// trilinear_T_physical(v, v, conj(v)).
GridFunction trilinear_T_physical(const GridFunction& v1, const GridFunction& v2,
                                  const GridFunction& v3, std::size_t pad_factor = 4);

// Line: |v|^4 v.
// Torus: (|v|^4 - <|v|^4>) v - 2 <|v|^2> (|v|^2 - <|v|^2>) v.
GridFunction quintic_Q_physical(const GridFunction& v, std::size_t pad_factor = 4);
// Five-argument form. Torus: the lattice sum with
// xi1+xi2+xi3+xi4, xi1+xi2, xi3+xi4 != 0, which by inclusion-exclusion is
//   v1..v5 - v5<v1v2v3v4> - <v1v2>v3v4v5 - <v3v4>v1v2v5 + 2<v1v2><v3v4>v5.
GridFunction quintic_Q_physical(const GridFunction& v1, const GridFunction& v2,
                                const GridFunction& v3, const GridFunction& v4,
                                const GridFunction& v5, std::size_t pad_factor = 4);

// lambda |v|^{2k} v
GridFunction power_nonlinearity(const GridFunction& v, double lambda, int k,
                                std::size_t pad_factor = 4);

// Brute-force lattice sums over the convolution hyperplane, used as oracles.
// An m-fold product carries the factor (dxi / sqrt(2 pi))^{m-1}.
// trilinear_T_fourier requires n <= 64, quintic_Q_fourier n <= 32.
SpectralField trilinear_T_fourier(const SpectralField& v1, const SpectralField& v2,
                                  const SpectralField& v3);
SpectralField quintic_Q_fourier(const SpectralField& v1, const SpectralField& v2,
                                const SpectralField& v3, const SpectralField& v4,
                                const SpectralField& v5);

}  // namespace dnls
