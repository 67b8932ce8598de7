#include "dnls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dnls/error.hpp"
#include "dnls/nonlinear.hpp"
#include "dnls/parallel.hpp"

namespace dnls {
namespace {

const Complex kI{0.0, 1.0};

// phi_k(z) = sum_j z^j / (j + k)!
Complex phi(int k, Complex z) {
  if (std::abs(z) < 1.0) {
    Complex term = 1.0;
    for (int j = 1; j <= k; ++j) term /= static_cast<double>(j);
    Complex sum = term;
    for (int j = 1; j < 30; ++j) {
      term *= z / static_cast<double>(j + k);
      sum += term;
    }
    return sum;
  }
  Complex p = std::exp(z);
  double fact = 1.0;
  for (int j = 1; j <= k; ++j) {
    p = (p - 1.0 / fact) / z;
    fact *= static_cast<double>(j);
  }
  return p;
}

struct Coefficients {
  std::vector<Complex> e, e2;       // e^{zh}, e^{zh/2}
  std::vector<Complex> half_phi1;   // (h/2) phi_1(zh/2)
  std::vector<Complex> f1, f2, f3;  // h times the Cox-Matthews weights
};

Coefficients make_coefficients(const Domain& d, double h) {
  const std::size_t n = d.size();
  Coefficients c;
  for (auto* v : {&c.e, &c.e2, &c.half_phi1, &c.f1, &c.f2, &c.f3}) v->resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = d.frequency(k);
    const Complex z = Complex(0.0, -xi * xi * h);
    c.e[k] = std::exp(z);
    c.e2[k] = std::exp(0.5 * z);
    c.half_phi1[k] = 0.5 * h * phi(1, 0.5 * z);
    const Complex p1 = phi(1, z), p2 = phi(2, z), p3 = phi(3, z);
    c.f1[k] = h * (p1 - 3.0 * p2 + 4.0 * p3);
    c.f2[k] = h * (p2 - 2.0 * p3);
    c.f3[k] = h * (-p2 + 4.0 * p3);
  }
  return c;
}

class Stepper {
 public:
  Stepper(const SolverConfig& cfg, double h)
      : cfg_(cfg), h_(h), c_(make_coefficients(cfg.domain, h)) {}

  // N(u) = -i F(u)^ for the state given on the grid.
  SpectralField forcing(const GridFunction& u) const {
    return (-kI) * to_spectral(rhs(u, cfg_.nonlinearity, cfg_.pad_factor));
  }
  SpectralField forcing(const SpectralField& u) const { return forcing(to_grid(u)); }

  SpectralField step(const SpectralField& u, const GridFunction& u_grid) const {
    return cfg_.integrator == Integrator::EtdRk4 ? etdrk4(u, u_grid) : ifrk4(u, u_grid);
  }

 private:
  using V = std::vector<Complex>;

  SpectralField etdrk4(const SpectralField& u, const GridFunction& ug) const {
    const std::size_t n = u.coeffs.size();
    const SpectralField nu = forcing(ug);
    SpectralField a = u;
    for (std::size_t k = 0; k < n; ++k)
      a.coeffs[k] = c_.e2[k] * u.coeffs[k] + c_.half_phi1[k] * nu.coeffs[k];
    const SpectralField na = forcing(a);
    SpectralField b = u;
    for (std::size_t k = 0; k < n; ++k)
      b.coeffs[k] = c_.e2[k] * u.coeffs[k] + c_.half_phi1[k] * na.coeffs[k];
    const SpectralField nb = forcing(b);
    SpectralField c = u;
    for (std::size_t k = 0; k < n; ++k)
      c.coeffs[k] = c_.e2[k] * a.coeffs[k] +
                    c_.half_phi1[k] * (2.0 * nb.coeffs[k] - nu.coeffs[k]);
    const SpectralField nc = forcing(c);
    SpectralField out = u;
    for (std::size_t k = 0; k < n; ++k)
      out.coeffs[k] = c_.e[k] * u.coeffs[k] + c_.f1[k] * nu.coeffs[k] +
                      2.0 * c_.f2[k] * (na.coeffs[k] + nb.coeffs[k]) +
                      c_.f3[k] * nc.coeffs[k];
    return out;
  }

  // Classical RK4 on the interaction-picture variable e^{i t xi^2} u_hat.
  SpectralField ifrk4(const SpectralField& u, const GridFunction& ug) const {
    const std::size_t n = u.coeffs.size();
    const double h = h_;
    const SpectralField k1 = forcing(ug);
    SpectralField s = u;
    for (std::size_t k = 0; k < n; ++k)
      s.coeffs[k] = c_.e2[k] * (u.coeffs[k] + 0.5 * h * k1.coeffs[k]);
    const SpectralField k2 = forcing(s);
    for (std::size_t k = 0; k < n; ++k)
      s.coeffs[k] = c_.e2[k] * u.coeffs[k] + 0.5 * h * k2.coeffs[k];
    const SpectralField k3 = forcing(s);
    for (std::size_t k = 0; k < n; ++k)
      s.coeffs[k] = c_.e[k] * u.coeffs[k] + h * c_.e2[k] * k3.coeffs[k];
    const SpectralField k4 = forcing(s);
    SpectralField out = u;
    for (std::size_t k = 0; k < n; ++k)
      out.coeffs[k] = c_.e[k] * u.coeffs[k] +
                      h / 6.0 *
                          (c_.e[k] * k1.coeffs[k] +
                           2.0 * c_.e2[k] * (k2.coeffs[k] + k3.coeffs[k]) + k4.coeffs[k]);
    return out;
  }

  const SolverConfig& cfg_;
  double h_;
  Coefficients c_;
};

void check_edges(const GridFunction& u0) {
  if (u0.domain.is_torus()) return;
  const double left = std::abs(u0.values.front());
  const double right = std::abs(u0.values.back());
  if (left >= 1e-10 || right >= 1e-10)
    throw DomainError("line data must decay below 1e-10 at the box edges (|u0| = " +
                      std::to_string(std::max(left, right)) + ")");
}

double signed_step(const SolverConfig& cfg) {
  return cfg.direction == Direction::Forward ? cfg.dt : -cfg.dt;
}

void finish(Trajectory& traj, const SolverConfig& cfg) {
  if (cfg.direction == Direction::Backward) {
    std::reverse(traj.times.begin(), traj.times.end());
    std::reverse(traj.slices.begin(), traj.slices.end());
  }
  traj.config = cfg;
  traj.refresh_mass();
}

void check_growth(const GridFunction& u, double limit, double t) {
  double m = 0.0;
  for (auto z : u.values) {
    const double a = std::abs(z);
    if (!std::isfinite(a))
      throw BlowUpError("non-finite value at t = " + std::to_string(t), t);
    m = std::max(m, a);
  }
  if (limit > 0.0 && m > limit)
    throw BlowUpError("sup norm exceeded 1e6 times its initial value at t = " +
                      std::to_string(t), t);
}

std::size_t locate_time(const Trajectory& w, double t) {
  const double step = std::abs(w.dt());
  const double tol = 1e-9 * std::max(1.0, step);
  if (t < w.times.front() - tol || t > w.times.back() + tol)
    throw RangeError("time " + std::to_string(t) + " outside the forcing span [" +
                     std::to_string(w.times.front()) + ", " +
                     std::to_string(w.times.back()) + "]");
  for (std::size_t m = 0; m < w.times.size(); ++m)
    if (std::abs(w.times[m] - t) <= std::max(tol, 1e-9 * step)) return m;
  throw RangeError("time " + std::to_string(t) + " is not on the forcing time grid");
}

}  // namespace

SpectralField linear_propagate(const SpectralField& f, double t) {
  SpectralField out = f;
  if (t == 0.0) return out;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
    const double xi = f.domain.frequency(k);
    out.coeffs[k] *= std::polar(1.0, -t * xi * xi);
  }
  return out;
}

GridFunction linear_propagate(const GridFunction& f, double t) {
  if (t == 0.0) return f;
  return to_grid(linear_propagate(to_spectral(f), t));
}

Trajectory solve(const GridFunction& u0, const SolverConfig& cfg) {
  cfg.validate();
  require_same_domain(u0.domain, cfg.domain, "solve");
  check_edges(u0);
  const std::size_t steps = cfg.steps();
  if (steps % cfg.record_every != 0)
    throw ParameterError("record_every must divide the number of steps");
  const double h = signed_step(cfg);
  const Stepper stepper(cfg, h);
  const double limit = 1e6 * max_abs(u0);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.slices.push_back(u0);
  SpectralField u = to_spectral(u0);
  GridFunction ug = u0;
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t = h * static_cast<double>(s);
    u = stepper.step(u, ug);
    ug = to_grid(u);
    check_growth(ug, limit, t);
    if (s % cfg.record_every == 0) {
      traj.times.push_back(t);
      traj.slices.push_back(ug);
    }
  }
  finish(traj, cfg);
  return traj;
}

Trajectory solve_two_sided(const GridFunction& u0, const SolverConfig& cfg) {
  SolverConfig back = cfg, fwd = cfg;
  back.direction = Direction::Backward;
  fwd.direction = Direction::Forward;
  Trajectory b = solve(u0, back);
  const Trajectory f = solve(u0, fwd);
  for (std::size_t m = 1; m < f.size(); ++m) {
    b.times.push_back(f.times[m]);
    b.slices.push_back(f.slices[m]);
  }
  b.config = fwd;
  b.refresh_mass();
  return b;
}

Trajectory free_trajectory(const GridFunction& u0, const SolverConfig& cfg) {
  cfg.validate();
  require_same_domain(u0.domain, cfg.domain, "free_trajectory");
  const std::size_t steps = cfg.steps();
  if (steps % cfg.record_every != 0)
    throw ParameterError("record_every must divide the number of steps");
  const double h = signed_step(cfg) * static_cast<double>(cfg.record_every);
  const std::size_t count = steps / cfg.record_every + 1;
  const SpectralField c0 = to_spectral(u0);
  Trajectory traj;
  for (std::size_t m = 0; m < count; ++m) traj.times.push_back(h * static_cast<double>(m));
  traj.slices = parallel_map(count, [&](std::size_t m) {
    return to_grid(linear_propagate(c0, traj.times[m]));
  });
  finish(traj, cfg);
  return traj;
}

GridFunction duhamel_apply(const Trajectory& w, double t) {
  w.validate();
  const std::size_t i0 = locate_time(w, 0.0);
  const std::size_t i1 = locate_time(w, t);
  const Domain& d = w.domain();
  SpectralField acc = SpectralField::zeros(d);
  if (i0 == i1) return to_grid(acc);
  const std::size_t lo = std::min(i0, i1), hi = std::max(i0, i1);
  const double step = w.dt() * (i1 > i0 ? 1.0 : -1.0);
  for (std::size_t m = lo; m <= hi; ++m) {
    const double weight = (m == lo || m == hi) ? 0.5 * step : step;
    const SpectralField g = linear_propagate(to_spectral(w.slices[m]), -w.times[m]);
    for (std::size_t k = 0; k < acc.coeffs.size(); ++k)
      acc.coeffs[k] += weight * g.coeffs[k];
  }
  return to_grid(linear_propagate(acc, w.times[i1]));
}

PicardResult picard_iterate(const GridFunction& u0, const SolverConfig& cfg,
                            int n_iter) {
  cfg.validate();
  require_same_domain(u0.domain, cfg.domain, "picard_iterate");
  if (n_iter < 1) throw ParameterError("picard_iterate needs n_iter >= 1");
  const std::size_t steps = cfg.steps();
  const double h = signed_step(cfg);
  const std::size_t count = steps + 1;
  std::vector<double> times(count);
  for (std::size_t m = 0; m < count; ++m) times[m] = h * static_cast<double>(m);

  const SpectralField c0 = to_spectral(u0);
  std::vector<GridFunction> v = parallel_map(
      count, [&](std::size_t m) { return to_grid(linear_propagate(c0, times[m])); });
  const double floor = 1e-13 * std::max(l2_norm(u0), 1e-300);

  PicardResult result;
  int above_one = 0;
  for (int it = 0; it < n_iter; ++it) {
    // Interaction-picture integrand U_{-t'} (-i F(v(t')))^.
    const auto g = parallel_map(count, [&](std::size_t m) {
      const SpectralField f = to_spectral(rhs(v[m], cfg.nonlinearity, cfg.pad_factor));
      return linear_propagate((-kI) * f, -times[m]);
    });
    std::vector<GridFunction> next;
    next.reserve(count);
    SpectralField acc = SpectralField::zeros(cfg.domain);
    for (std::size_t m = 0; m < count; ++m) {
      if (m > 0)
        for (std::size_t k = 0; k < acc.coeffs.size(); ++k)
          acc.coeffs[k] += 0.5 * h * (g[m - 1].coeffs[k] + g[m].coeffs[k]);
      next.push_back(to_grid(linear_propagate(c0 + acc, times[m])));
    }
    double diff = 0.0;
    for (std::size_t m = 0; m < count; ++m) diff = std::max(diff, l2_norm(next[m] - v[m]));
    v = std::move(next);
    if (!result.differences.empty() && result.differences.back() > 0.0) {
      const double ratio = diff / result.differences.back();
      result.ratios.push_back(ratio);
      above_one = ratio >= 1.0 ? above_one + 1 : 0;
    }
    result.differences.push_back(diff);
    if (above_one >= 3) {
      result.diverged = true;
      break;
    }
    if (diff <= floor) break;
  }

  Trajectory traj;
  traj.times = std::move(times);
  traj.slices = std::move(v);
  finish(traj, cfg);
  result.iterate = std::move(traj);
  return result;
}

GridFunction rescale(const GridFunction& f, std::size_t sigma) {
  if (f.domain.is_torus())
    throw DomainError("rescale is only defined on the line (scaling changes the period)");
  if (sigma == 0 || (sigma & (sigma - 1)) != 0)
    throw ParameterError("sigma must be a power of two, got " + std::to_string(sigma));
  const Domain d = Domain::line(f.domain.size(), f.domain.domain_scale() * sigma);
  const double amp = 1.0 / std::sqrt(static_cast<double>(sigma));
  std::vector<Complex> v(f.values);
  for (auto& z : v) z *= amp;
  return GridFunction(d, std::move(v));
}

Trajectory rescale(const Trajectory& traj, std::size_t sigma) {
  traj.validate();
  const double s2 = static_cast<double>(sigma) * static_cast<double>(sigma);
  Trajectory out;
  for (const auto& s : traj.slices) out.slices.push_back(rescale(s, sigma));
  for (double t : traj.times) out.times.push_back(s2 * t);
  if (traj.config) {
    SolverConfig c = *traj.config;
    c.domain = out.slices.front().domain;
    c.dt *= s2;
    c.t_final *= s2;
    out.config = c;
  }
  out.refresh_mass();
  return out;
}

}  // namespace dnls
