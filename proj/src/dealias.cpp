#include "dnls/dealias.hpp"

#include <string>

#include "dnls/error.hpp"
#include "dnls/fft.hpp"

namespace dnls {

PaddedGrid::PaddedGrid(const Domain& d, std::size_t factor)
    : domain_(d), factor_(factor) {
  if (factor == 0 || (factor & (factor - 1)) != 0)
    throw ParameterError("pad factor must be a power of two, got " +
                         std::to_string(factor));
}

std::size_t PaddedGrid::factor_for_degree(int degree, std::size_t configured) {
  std::size_t p = 1;
  while (2 * p < static_cast<std::size_t>(degree + 1)) p *= 2;
  return std::max(p, configured);
}

std::vector<Complex> PaddedGrid::lift_impl(const GridFunction& f, bool derive) const {
  require_same_domain(f.domain, domain_, "PaddedGrid::lift");
  const std::size_t n = domain_.size();
  const std::size_t m = size();
  std::vector<Complex> a(n);
  fft::forward(f.values, a);
  std::vector<Complex> padded(m);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex c = a[k] * inv;
    if (derive) c *= Complex(0.0, domain_.frequency(k));
    padded[k < n / 2 ? k : k + m - n] = c;
  }
  std::vector<Complex> out(m);
  fft::backward(padded, out);
  return out;
}

std::vector<Complex> PaddedGrid::lift(const GridFunction& f) const {
  return lift_impl(f, false);
}

std::vector<Complex> PaddedGrid::lift_derivative(const GridFunction& f) const {
  return lift_impl(f, true);
}

GridFunction PaddedGrid::reduce_impl(std::span<const Complex> samples,
                                     bool derive) const {
  const std::size_t n = domain_.size();
  const std::size_t m = size();
  if (samples.size() != m) throw DomainMismatchError("padded sample count mismatch");
  std::vector<Complex> big(m);
  fft::forward(samples, big);
  std::vector<Complex> a(n);
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) {
    Complex c = big[k < n / 2 ? k : k + m - n] * inv;
    if (derive) c *= Complex(0.0, domain_.frequency(k));
    a[k] = c;
  }
  std::vector<Complex> v(n);
  fft::backward(a, v);
  return GridFunction(domain_, std::move(v));
}

GridFunction PaddedGrid::reduce(std::span<const Complex> samples) const {
  return reduce_impl(samples, false);
}

GridFunction PaddedGrid::reduce_derivative(std::span<const Complex> samples) const {
  return reduce_impl(samples, true);
}

Complex PaddedGrid::mean(std::span<const Complex> samples) {
  Complex s{};
  for (auto z : samples) s += z;
  return s / static_cast<double>(samples.size());
}

}  // namespace dnls
