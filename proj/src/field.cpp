#include "dnls/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dnls/error.hpp"
#include "dnls/fft.hpp"

namespace dnls {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

Domain Domain::torus(std::size_t n_points) {
  if (n_points < 8 || !is_power_of_two(n_points))
    throw DomainError("n_points must be a power of two >= 8, got " +
                      std::to_string(n_points));
  return Domain(DomainKind::Torus, n_points, 1);
}

Domain Domain::line(std::size_t n_points, std::size_t domain_scale) {
  if (n_points < 8 || !is_power_of_two(n_points))
    throw DomainError("n_points must be a power of two >= 8, got " +
                      std::to_string(n_points));
  if (!is_power_of_two(domain_scale))
    throw DomainError("domain_scale must be a power of two, got " +
                      std::to_string(domain_scale));
  return Domain(DomainKind::LineApprox, n_points, domain_scale);
}

double Domain::period() const noexcept {
  return kTwoPi * static_cast<double>(scale_);
}

double Domain::dxi() const noexcept { return kTwoPi / period(); }

double Domain::origin() const noexcept {
  return kind_ == DomainKind::Torus ? 0.0 : -0.5 * period();
}

long Domain::wavenumber(std::size_t k) const noexcept {
  const auto n = static_cast<long>(n_);
  const auto kk = static_cast<long>(k);
  return kk < n / 2 ? kk : kk - n;
}

std::optional<std::size_t> Domain::index_of(long m) const noexcept {
  const auto n = static_cast<long>(n_);
  if (m < -n / 2 || m >= n / 2) return std::nullopt;
  return static_cast<std::size_t>(m >= 0 ? m : m + n);
}

Domain Domain::with_points(std::size_t n_points) const {
  return kind_ == DomainKind::Torus ? torus(n_points) : line(n_points, scale_);
}

GridFunction::GridFunction(Domain d, std::vector<Complex> v)
    : domain(d), values(std::move(v)) {
  if (values.size() != domain.size())
    throw DomainMismatchError("grid function size does not match domain");
}

GridFunction GridFunction::zeros(const Domain& d) {
  return GridFunction(d, std::vector<Complex>(d.size()));
}

SpectralField::SpectralField(Domain d, std::vector<Complex> c)
    : domain(d), coeffs(std::move(c)) {
  if (coeffs.size() != domain.size())
    throw DomainMismatchError("spectral field size does not match domain");
}

SpectralField SpectralField::zeros(const Domain& d) {
  return SpectralField(d, std::vector<Complex>(d.size()));
}

SpectralField SpectralField::unit_mass(const Domain& d, long wavenumber,
                                       Complex amplitude) {
  auto f = zeros(d);
  f.at_wavenumber(wavenumber) = amplitude;
  return f;
}

Complex& SpectralField::at_wavenumber(long m) {
  auto idx = domain.index_of(m);
  if (!idx) throw RangeError("wavenumber outside lattice: " + std::to_string(m));
  return coeffs[*idx];
}

Complex SpectralField::at_wavenumber(long m) const {
  auto idx = domain.index_of(m);
  return idx ? coeffs[*idx] : Complex{};
}

SpectralField to_spectral(const GridFunction& f) {
  const Domain& d = f.domain;
  std::vector<Complex> c(d.size());
  fft::forward(f.values, c);
  const double scale = d.dx() / std::sqrt(kTwoPi);
  const double x0 = d.origin();
  for (std::size_t k = 0; k < c.size(); ++k) {
    Complex shift = x0 == 0.0 ? Complex{1.0}
                              : std::polar(1.0, -x0 * d.frequency(k));
    c[k] *= scale * shift;
  }
  return SpectralField(d, std::move(c));
}

GridFunction to_grid(const SpectralField& f) {
  const Domain& d = f.domain;
  std::vector<Complex> c(f.coeffs);
  const double scale = d.dxi() / std::sqrt(kTwoPi);
  const double x0 = d.origin();
  for (std::size_t k = 0; k < c.size(); ++k) {
    Complex shift =
        x0 == 0.0 ? Complex{1.0} : std::polar(1.0, x0 * d.frequency(k));
    c[k] *= scale * shift;
  }
  std::vector<Complex> v(d.size());
  fft::backward(c, v);
  return GridFunction(d, std::move(v));
}

SpectralField conjugate(const SpectralField& f) {
  const std::size_t n = f.coeffs.size();
  std::vector<Complex> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = std::conj(f.coeffs[(n - k) % n]);
  return SpectralField(f.domain, std::move(c));
}

GridFunction conjugate(const GridFunction& f) {
  std::vector<Complex> v(f.values.size());
  std::transform(f.values.begin(), f.values.end(), v.begin(),
                 [](Complex z) { return std::conj(z); });
  return GridFunction(f.domain, std::move(v));
}

SpectralField derivative(const SpectralField& f) {
  SpectralField out = f;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k)
    out.coeffs[k] *= Complex(0.0, f.domain.frequency(k));
  return out;
}

double l2_norm(const GridFunction& f) {
  double sum = 0.0;
  for (auto z : f.values) sum += std::norm(z);
  return std::sqrt(f.domain.dx() * sum);
}

double l2_norm(const SpectralField& f) {
  double sum = 0.0;
  for (auto z : f.coeffs) sum += std::norm(z);
  return std::sqrt(f.domain.dxi() * sum);
}

double max_abs(const GridFunction& f) {
  double m = 0.0;
  for (auto z : f.values) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
  require_same_domain(a.domain, b.domain, "max_abs_difference");
  double m = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j)
    m = std::max(m, std::abs(a.values[j] - b.values[j]));
  return m;
}

void require_same_domain(const Domain& a, const Domain& b, const char* what) {
  if (!(a == b))
    throw DomainMismatchError(std::string(what) + ": fields on different domains");
}

namespace {

template <class Field, class Op>
Field combine(const Field& a, const Field& b, Op op, const char* what) {
  require_same_domain(a.domain, b.domain, what);
  Field out = a;
  auto& dst = [&]() -> std::vector<Complex>& {
    if constexpr (std::is_same_v<Field, GridFunction>) return out.values;
    else return out.coeffs;
  }();
  const auto& src = [&]() -> const std::vector<Complex>& {
    if constexpr (std::is_same_v<Field, GridFunction>) return b.values;
    else return b.coeffs;
  }();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = op(dst[i], src[i]);
  return out;
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  return combine(a, b, std::plus<>{}, "operator+");
}
GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  return combine(a, b, std::minus<>{}, "operator-");
}
GridFunction operator*(Complex s, const GridFunction& a) {
  GridFunction out = a;
  for (auto& z : out.values) z *= s;
  return out;
}
SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  return combine(a, b, std::plus<>{}, "operator+");
}
SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  return combine(a, b, std::minus<>{}, "operator-");
}
SpectralField operator*(Complex s, const SpectralField& a) {
  SpectralField out = a;
  for (auto& z : out.coeffs) z *= s;
  return out;
}

}  // namespace dnls
