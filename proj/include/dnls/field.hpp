#pragma once

// Discrete fields on a uniform periodic grid and the Fourier transform
// between samples and lattice coefficients.
//
// Coefficient convention: c(xi_k) = (dx / sqrt(2 pi)) sum_j f(x_j) e^{-i x_j xi_k},
// the Riemann sum of the symmetric continuous transform. Plancherel then
// reads ||f||_{L2}^2 = dxi * sum_k |c_k|^2 with dxi = 2 pi / period.
// Coefficient arrays are stored in FFT order: index k holds wavenumber k for
// k < n/2 and k - n otherwise.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace dnls {

using Complex = std::complex<double>;

enum class DomainKind { Torus, LineApprox };

class Domain {
 public:
  // Period 2 pi, grid x_j = j dx.
  static Domain torus(std::size_t n_points);
  // Period 2 pi * domain_scale, grid centred: x_j = -L/2 + j dx.
  static Domain line(std::size_t n_points, std::size_t domain_scale);

  DomainKind kind() const noexcept { return kind_; }
  bool is_torus() const noexcept { return kind_ == DomainKind::Torus; }
  std::size_t size() const noexcept { return n_; }
  std::size_t domain_scale() const noexcept { return scale_; }
  double period() const noexcept;
  double dx() const noexcept { return period() / static_cast<double>(n_); }
  double dxi() const noexcept;
  double origin() const noexcept;
  double x(std::size_t j) const noexcept {
    return origin() + dx() * static_cast<double>(j);
  }

  long wavenumber(std::size_t k) const noexcept;
  double frequency(std::size_t k) const noexcept {
    return dxi() * static_cast<double>(wavenumber(k));
  }
  std::optional<std::size_t> index_of(long wavenumber) const noexcept;

  // Same kind and period, different resolution.
  Domain with_points(std::size_t n_points) const;

  bool operator==(const Domain&) const = default;

 private:
  Domain(DomainKind kind, std::size_t n, std::size_t scale)
      : kind_(kind), n_(n), scale_(scale) {}

  DomainKind kind_;
  std::size_t n_;
  std::size_t scale_;
};

struct GridFunction {
  Domain domain;
  std::vector<Complex> values;

  GridFunction(Domain d, std::vector<Complex> v);
  static GridFunction zeros(const Domain& d);
};

struct SpectralField {
  Domain domain;
  std::vector<Complex> coeffs;

  SpectralField(Domain d, std::vector<Complex> c);
  static SpectralField zeros(const Domain& d);
  // Coefficient `amplitude` at one lattice wavenumber, zero elsewhere.
  static SpectralField unit_mass(const Domain& d, long wavenumber,
                                 Complex amplitude = 1.0);

  Complex& at_wavenumber(long m);
  Complex at_wavenumber(long m) const;
};

SpectralField to_spectral(const GridFunction& f);
GridFunction to_grid(const SpectralField& f);

// Coefficients of the pointwise conjugate: conj(c(-xi)), index -k mod n.
SpectralField conjugate(const SpectralField& f);
GridFunction conjugate(const GridFunction& f);

// Spectral d/dx: multiplies every retained mode by i xi.
SpectralField derivative(const SpectralField& f);

double l2_norm(const GridFunction& f);
double l2_norm(const SpectralField& f);
double max_abs(const GridFunction& f);
double max_abs_difference(const GridFunction& a, const GridFunction& b);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(Complex s, const GridFunction& a);
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(Complex s, const SpectralField& a);

void require_same_domain(const Domain& a, const Domain& b, const char* what);

}  // namespace dnls
