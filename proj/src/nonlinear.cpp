#include "dnls/nonlinear.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dnls/dealias.hpp"
#include "dnls/error.hpp"
#include "dnls/parallel.hpp"

namespace dnls {
namespace {

const Complex kI{0.0, 1.0};

using Samples = std::vector<Complex>;

void require_same(const GridFunction& a, const GridFunction& b) {
  require_same_domain(a.domain, b.domain, "nonlinear");
}

// lambda |v|^{2k} v on padded samples
Samples power_samples(const Samples& v, double lambda, int k) {
  Samples out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double a2 = std::norm(v[j]);
    double w = 1.0;
    for (int i = 0; i < k; ++i) w *= a2;
    out[j] = lambda * w * v[j];
  }
  return out;
}

void check_oracle_size(const SpectralField& f, std::size_t limit, const char* what) {
  if (f.domain.size() > limit)
    throw SizeLimitError(std::string(what) + " oracle is limited to n <= " +
                         std::to_string(limit) + ", got " +
                         std::to_string(f.domain.size()));
}

}  // namespace

GridFunction power_nonlinearity(const GridFunction& v, double lambda, int k,
                                std::size_t pad_factor) {
  if (k < 0) throw ParameterError("power nonlinearity needs k >= 0");
  if (k == 0) return Complex(lambda) * v;
  PaddedGrid grid(v.domain, PaddedGrid::factor_for_degree(2 * k + 1, pad_factor));
  return grid.reduce(power_samples(grid.lift(v), lambda, k));
}

GridFunction rhs_original(const GridFunction& u, const NonlinearityConfig& cfg,
                          std::size_t pad_factor) {
  if (cfg.gauged) throw ParameterError("rhs_original called with a gauged config");
  PaddedGrid grid(u.domain, PaddedGrid::factor_for_degree(3, pad_factor));
  Samples p = grid.lift(u);
  for (auto& z : p) z *= std::norm(z);
  GridFunction out = kI * grid.reduce_derivative(p);
  if (cfg.lambda != 0.0)
    out = out + power_nonlinearity(u, cfg.lambda, cfg.k_power, pad_factor);
  return out;
}

GridFunction trilinear_T_physical(const GridFunction& v1, const GridFunction& v2,
                                  const GridFunction& v3, std::size_t pad_factor) {
  require_same(v1, v2);
  require_same(v1, v3);
  PaddedGrid grid(v1.domain, PaddedGrid::factor_for_degree(3, pad_factor));
  const Samples a = grid.lift(v1);
  const Samples b = grid.lift(v2);
  const Samples d3 = grid.lift_derivative(v3);
  Samples p(a.size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = a[j] * b[j] * d3[j];
  if (v1.domain.is_torus()) {
    Samples q(a.size()), r(a.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
      q[j] = b[j] * d3[j];
      r[j] = a[j] * d3[j];
    }
    const Complex m2 = PaddedGrid::mean(q);
    const Complex m1 = PaddedGrid::mean(r);
    for (std::size_t j = 0; j < p.size(); ++j) p[j] -= a[j] * m2 + b[j] * m1;
  }
  return grid.reduce(p);
}

GridFunction quintic_Q_physical(const GridFunction& v1, const GridFunction& v2,
                                const GridFunction& v3, const GridFunction& v4,
                                const GridFunction& v5, std::size_t pad_factor) {
  require_same(v1, v2);
  require_same(v1, v3);
  require_same(v1, v4);
  require_same(v1, v5);
  PaddedGrid grid(v1.domain, PaddedGrid::factor_for_degree(5, pad_factor));
  const Samples a = grid.lift(v1), b = grid.lift(v2), c = grid.lift(v3),
                d = grid.lift(v4), e = grid.lift(v5);
  const std::size_t m = a.size();
  Samples p(m);
  if (!v1.domain.is_torus()) {
    for (std::size_t j = 0; j < m; ++j) p[j] = a[j] * b[j] * c[j] * d[j] * e[j];
    return grid.reduce(p);
  }
  Samples ab(m), cd(m);
  for (std::size_t j = 0; j < m; ++j) {
    ab[j] = a[j] * b[j];
    cd[j] = c[j] * d[j];
  }
  Samples abcd(m);
  for (std::size_t j = 0; j < m; ++j) abcd[j] = ab[j] * cd[j];
  const Complex m_ab = PaddedGrid::mean(ab);
  const Complex m_cd = PaddedGrid::mean(cd);
  const Complex m_abcd = PaddedGrid::mean(abcd);
  for (std::size_t j = 0; j < m; ++j)
    p[j] = (abcd[j] - m_abcd - m_ab * cd[j] - m_cd * ab[j] + 2.0 * m_ab * m_cd) * e[j];
  return grid.reduce(p);
}

GridFunction quintic_Q_physical(const GridFunction& v, std::size_t pad_factor) {
  PaddedGrid grid(v.domain, PaddedGrid::factor_for_degree(5, pad_factor));
  Samples s = grid.lift(v);
  const std::size_t m = s.size();
  Samples a2(m), a4(m);
  for (std::size_t j = 0; j < m; ++j) {
    a2[j] = std::norm(s[j]);
    a4[j] = a2[j] * a2[j];
  }
  Samples p(m);
  if (!v.domain.is_torus()) {
    for (std::size_t j = 0; j < m; ++j) p[j] = a4[j] * s[j];
    return grid.reduce(p);
  }
  const Complex m2 = PaddedGrid::mean(a2);
  const Complex m4 = PaddedGrid::mean(a4);
  for (std::size_t j = 0; j < m; ++j)
    p[j] = ((a4[j] - m4) - 2.0 * m2 * (a2[j] - m2)) * s[j];
  return grid.reduce(p);
}

GridFunction rhs_gauged(const GridFunction& v, const NonlinearityConfig& cfg,
                        std::size_t pad_factor) {
  if (!cfg.gauged) throw ParameterError("rhs_gauged called with an ungauged config");
  const GridFunction t = trilinear_T_physical(v, v, conjugate(v), pad_factor);
  const GridFunction q = quintic_Q_physical(v, pad_factor);
  GridFunction out = (-kI) * t - Complex(0.5) * q;
  if (cfg.lambda != 0.0)
    out = out + power_nonlinearity(v, cfg.lambda, cfg.k_power, pad_factor);
  return out;
}

GridFunction rhs(const GridFunction& u, const NonlinearityConfig& cfg,
                 std::size_t pad_factor) {
  return cfg.gauged ? rhs_gauged(u, cfg, pad_factor) : rhs_original(u, cfg, pad_factor);
}

SpectralField trilinear_T_fourier(const SpectralField& v1, const SpectralField& v2,
                                  const SpectralField& v3) {
  require_same_domain(v1.domain, v2.domain, "trilinear_T_fourier");
  require_same_domain(v1.domain, v3.domain, "trilinear_T_fourier");
  check_oracle_size(v1, 64, "trilinear");
  const Domain& d = v1.domain;
  const long half = static_cast<long>(d.size() / 2);
  const bool torus = d.is_torus();
  const double c = d.dxi() / std::sqrt(2.0 * std::numbers::pi);
  const double norm = c * c;
  auto coeffs = parallel_map(d.size(), [&](std::size_t k) {
    const long m = d.wavenumber(k);
    Complex sum{};
    for (long m1 = -half; m1 < half; ++m1) {
      if (torus && m1 == m) continue;
      const Complex a = v1.at_wavenumber(m1);
      if (a == Complex{}) continue;
      for (long m2 = -half; m2 < half; ++m2) {
        if (torus && m2 == m) continue;
        const long m3 = m - m1 - m2;
        if (m3 < -half || m3 >= half) continue;
        const double xi3 = d.dxi() * static_cast<double>(m3);
        sum += a * v2.at_wavenumber(m2) * kI * xi3 * v3.at_wavenumber(m3);
      }
    }
    if (torus) {
      const double xi = d.dxi() * static_cast<double>(m);
      sum += v1.at_wavenumber(m) * v2.at_wavenumber(m) * kI * xi *
             v3.at_wavenumber(-m);
    }
    return norm * sum;
  });
  return SpectralField(d, std::move(coeffs));
}

SpectralField quintic_Q_fourier(const SpectralField& v1, const SpectralField& v2,
                                const SpectralField& v3, const SpectralField& v4,
                                const SpectralField& v5) {
  for (const SpectralField* f : {&v2, &v3, &v4, &v5})
    require_same_domain(v1.domain, f->domain, "quintic_Q_fourier");
  check_oracle_size(v1, 32, "quintic");
  const Domain& d = v1.domain;
  const long half = static_cast<long>(d.size() / 2);
  const bool torus = d.is_torus();
  const double c = d.dxi() / std::sqrt(2.0 * std::numbers::pi);
  const double norm = c * c * c * c;
  auto coeffs = parallel_map(d.size(), [&](std::size_t k) {
    const long m = d.wavenumber(k);
    Complex sum{};
    for (long m1 = -half; m1 < half; ++m1) {
      const Complex a = v1.at_wavenumber(m1);
      if (a == Complex{}) continue;
      for (long m2 = -half; m2 < half; ++m2) {
        if (torus && m1 + m2 == 0) continue;
        const Complex ab = a * v2.at_wavenumber(m2);
        for (long m3 = -half; m3 < half; ++m3) {
          const Complex abc = ab * v3.at_wavenumber(m3);
          for (long m4 = -half; m4 < half; ++m4) {
            if (torus && (m3 + m4 == 0 || m1 + m2 + m3 + m4 == 0)) continue;
            const long m5 = m - m1 - m2 - m3 - m4;
            if (m5 < -half || m5 >= half) continue;
            sum += abc * v4.at_wavenumber(m4) * v5.at_wavenumber(m5);
          }
        }
      }
    }
    return norm * sum;
  });
  return SpectralField(d, std::move(coeffs));
}

}  // namespace dnls
