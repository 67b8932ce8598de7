#pragma once

// Zero-padded evaluation grid for products of band-limited fields. A field
// is lifted by evaluating its trigonometric interpolant on a grid `factor`
// times finer; products computed there and truncated back to the base modes
// are free of aliasing as long as the product degree d obeys
// factor >= (d + 1) / 2.

#include <cstddef>
#include <span>
#include <vector>

#include "dnls/field.hpp"

namespace dnls {

class PaddedGrid {
 public:
  PaddedGrid(const Domain& d, std::size_t factor);

  // Smallest power of two >= (degree + 1) / 2, and at least `configured`.
  static std::size_t factor_for_degree(int degree, std::size_t configured);

  const Domain& domain() const noexcept { return domain_; }
  std::size_t factor() const noexcept { return factor_; }
  std::size_t size() const noexcept { return domain_.size() * factor_; }

  std::vector<Complex> lift(const GridFunction& f) const;
  // Samples of d/dx of the interpolant.
  std::vector<Complex> lift_derivative(const GridFunction& f) const;

  // Projection onto the base modes, returned as base-grid samples.
  GridFunction reduce(std::span<const Complex> samples) const;
  // d/dx of the projection.
  GridFunction reduce_derivative(std::span<const Complex> samples) const;

  // Spatial mean of the padded samples (the zero mode).
  static Complex mean(std::span<const Complex> samples);

 private:
  std::vector<Complex> lift_impl(const GridFunction& f, bool derive) const;
  GridFunction reduce_impl(std::span<const Complex> samples, bool derive) const;

  Domain domain_;
  std::size_t factor_;
};

}  // namespace dnls
