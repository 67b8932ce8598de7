#include "dnls/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dnls/error.hpp"

namespace dnls {
namespace {

std::vector<double> besov_blocks(const SpectralField& f) {
  std::vector<double> blocks;
  for (DyadicIndex N : dyadic_range(f.domain)) {
    double sum = 0.0;
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
      const double w = dyadic_weight(f.domain.frequency(k), N);
      if (w != 0.0) sum += w * w * std::norm(f.coeffs[k]);
    }
    blocks.push_back(std::sqrt(f.domain.dxi() * sum));
  }
  return blocks;
}

double sign_of(ModulationSign s) { return s == ModulationSign::Plus ? 1.0 : -1.0; }

// Per spatial mode: sum_tau <tau +- xi^2>^{2b} |u|^2.
std::vector<double> tau_l2_profile(const SpaceTimeField& u, double b,
                                   ModulationSign sign) {
  const std::size_t n = u.domain.size();
  const double sg = sign_of(sign);
  std::vector<double> prof(n, 0.0);
  for (std::size_t m = 0; m < u.n_times; ++m) {
    const double tau = u.tau(m);
    for (std::size_t k = 0; k < n; ++k) {
      const double a = std::norm(u.at(m, k));
      if (a == 0.0) continue;
      const double xi = u.domain.frequency(k);
      prof[k] += b == 0.0 ? a : a * std::pow(bracket(tau + sg * xi * xi), 2.0 * b);
    }
  }
  return prof;
}

// Per spatial mode: dtau sum_tau <tau + xi^2>^b |u|.
std::vector<double> tau_l1_profile(const SpaceTimeField& u, double b) {
  const std::size_t n = u.domain.size();
  std::vector<double> prof(n, 0.0);
  for (std::size_t m = 0; m < u.n_times; ++m) {
    const double tau = u.tau(m);
    for (std::size_t k = 0; k < n; ++k) {
      const double a = std::abs(u.at(m, k));
      if (a == 0.0) continue;
      const double xi = u.domain.frequency(k);
      prof[k] += b == 0.0 ? a : a * std::pow(bracket(tau + xi * xi), b);
    }
  }
  for (auto& v : prof) v *= u.dtau();
  return prof;
}

double sobolev_weight(double xi, double s) {
  return s == 0.0 ? 1.0 : std::pow(bracket(xi), s);
}

double x_block(const SpaceTimeField& u, const std::vector<double>& prof,
               double s, const DyadicIndex* N) {
  double sum = 0.0;
  for (std::size_t k = 0; k < prof.size(); ++k) {
    const double xi = u.domain.frequency(k);
    const double w = (N ? dyadic_weight(xi, *N) : 1.0) * sobolev_weight(xi, s);
    sum += w * w * prof[k];
  }
  return std::sqrt(u.domain.dxi() * u.dtau() * sum);
}

double y_block(const SpaceTimeField& u, const std::vector<double>& prof,
               double s, const DyadicIndex* N) {
  double sum = 0.0;
  for (std::size_t k = 0; k < prof.size(); ++k) {
    const double xi = u.domain.frequency(k);
    const double w = (N ? dyadic_weight(xi, *N) : 1.0) * sobolev_weight(xi, s);
    sum += w * w * prof[k] * prof[k];
  }
  return std::sqrt(u.domain.dxi() * sum);
}

double low_plus_sup(const std::vector<double>& blocks) {
  double sup = 0.0;
  for (std::size_t i = 1; i < blocks.size(); ++i) sup = std::max(sup, blocks[i]);
  return blocks.front() + sup;
}

}  // namespace

double besov_norm(const SpectralField& f, const BesovParams& p) {
  const auto blocks = besov_blocks(f);
  const auto range = dyadic_range(f.domain);
  double high = 0.0;
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    const double v = std::pow(range[i].as_double(), p.s) * blocks[i];
    if (p.q == BesovQ::Infinity) high = std::max(high, v);
    else high += v * v;
  }
  if (p.q == BesovQ::Two) high = std::sqrt(high);
  return blocks.front() + high;
}

double besov_norm(const GridFunction& f, const BesovParams& p) {
  return besov_norm(to_spectral(f), p);
}

double sobolev_norm(const SpectralField& f, double s) {
  return l2_norm(bessel_potential(f, s));
}

double sobolev_norm(const GridFunction& f, double s) {
  return sobolev_norm(to_spectral(f), s);
}

double xsb_norm(const SpaceTimeField& u, const XsbParams& p) {
  return x_block(u, tau_l2_profile(u, p.b, p.sign), p.s, nullptr);
}

double ysb_norm(const SpaceTimeField& u, double s, double b) {
  return y_block(u, tau_l1_profile(u, b), s, nullptr);
}

double zs_norm(const SpaceTimeField& u, double s) {
  return xsb_norm(u, {s, 0.5, ModulationSign::Plus}) + ysb_norm(u, s, 0.0);
}

double block_xsb_norm(const SpaceTimeField& u, const XsbParams& p, DyadicIndex N) {
  return x_block(u, tau_l2_profile(u, p.b, p.sign), p.s, &N);
}

double block_ysb_norm(const SpaceTimeField& u, double s, double b, DyadicIndex N) {
  return y_block(u, tau_l1_profile(u, b), s, &N);
}

std::vector<double> block_xsb_norms(const SpaceTimeField& u, const XsbParams& p) {
  const auto prof = tau_l2_profile(u, p.b, p.sign);
  std::vector<double> out;
  for (DyadicIndex N : dyadic_range(u.domain)) out.push_back(x_block(u, prof, p.s, &N));
  return out;
}

std::vector<double> block_ysb_norms(const SpaceTimeField& u, double s, double b) {
  const auto prof = tau_l1_profile(u, b);
  std::vector<double> out;
  for (DyadicIndex N : dyadic_range(u.domain)) out.push_back(y_block(u, prof, s, &N));
  return out;
}

double frak_norm(const SpaceTimeField& u, const XsbParams& p) {
  return low_plus_sup(block_xsb_norms(u, p));
}

double cal_y_norm(const SpaceTimeField& u, double s, double b) {
  return low_plus_sup(block_ysb_norms(u, s, b));
}

double cal_z_norm(const SpaceTimeField& u, double s) {
  const auto x = block_xsb_norms(u, {s, 0.5, ModulationSign::Plus});
  const auto y = block_ysb_norms(u, s, 0.0);
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return low_plus_sup(z);
}

double frak_cal_y_norm(const SpaceTimeField& u, double s, double bx, double by) {
  return std::max(frak_norm(u, {s, bx, ModulationSign::Plus}), cal_y_norm(u, s, by));
}

double TimeWindow::operator()(double t) const noexcept {
  return kind == Kind::Bump ? smooth_cutoff(t / scale) : annulus_cutoff(t, scale);
}

std::pair<double, double> TimeWindow::support() const noexcept {
  return {-2.0 * scale, 2.0 * scale};
}

std::string TimeWindow::describe() const {
  std::ostringstream os;
  os << (kind == Kind::Bump ? "chi(t/" : "chi_T(t), T=") << scale
     << (kind == Kind::Bump ? ")" : "");
  return os.str();
}

SpaceTimeField window_trajectory(const Trajectory& traj, const TimeWindow& w) {
  traj.validate();
  if (traj.size() < 3) throw ExtensionError("trajectory too short to window");
  const auto [lo, hi] = w.support();
  const double first = traj.times.front();
  const double last = traj.times.back();
  const double tol = 1e-12 * std::max(1.0, std::abs(last - first));
  if (lo < first - tol || hi > last + tol)
    throw ExtensionError("window support [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "] exceeds trajectory span [" +
                         std::to_string(first) + ", " + std::to_string(last) + "]");

  std::size_t m_count = traj.size();
  if (m_count % 2 == 0) --m_count;
  const Domain& d = traj.domain();
  const std::size_t n = d.size();
  std::vector<Complex> samples(n * m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const double wt = w(traj.times[m]);
    if (wt == 0.0) continue;
    const auto& v = traj.slices[m].values;
    for (std::size_t j = 0; j < n; ++j) samples[m * n + j] = wt * v[j];
  }
  SpaceTimeField u =
      space_time_transform(d, m_count, traj.dt(), traj.times.front(), samples);
  u.window = w.describe();
  return u;
}

double xy_embedding_constant(const SpaceTimeField& u, double b1, double b2) {
  double sup = 0.0;
  for (std::size_t k = 0; k < u.domain.size(); ++k) {
    const double xi = u.domain.frequency(k);
    double sum = 0.0;
    for (std::size_t m = 0; m < u.n_times; ++m)
      sum += std::pow(bracket(u.tau(m) + xi * xi), 2.0 * (b1 - b2));
    sup = std::max(sup, std::sqrt(u.dtau() * sum));
  }
  return sup;
}

}  // namespace dnls
