#pragma once

// Norms of the Besov, Sobolev and Bourgain-type spaces on discrete fields,
// and the windowed extension that turns a trajectory into a space-time field.
//
// All mixed norms use Riemann weights: dxi on the spatial lattice and dtau on
// the modulation lattice.

#include <string>
#include <utility>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/frequency.hpp"
#include "dnls/spacetime.hpp"

namespace dnls {

enum class BesovQ { Two, Infinity };

struct BesovParams {
  double s = 0.5;
  BesovQ q = BesovQ::Infinity;
};

// ||P_1 f||_{L2} + (sup | l2-sum) over N > 1 of N^s ||P_N f||_{L2}.
double besov_norm(const SpectralField& f, const BesovParams& p);
double besov_norm(const GridFunction& f, const BesovParams& p);
// ||J^s f||_{L2}
double sobolev_norm(const SpectralField& f, double s);
double sobolev_norm(const GridFunction& f, double s);

struct XsbParams {
  double s = 0.0;
  double b = 0.0;
  ModulationSign sign = ModulationSign::Plus;
};

// ||<xi>^s <tau +- xi^2>^b u_hat||_{L2_xi L2_tau}
double xsb_norm(const SpaceTimeField& u, const XsbParams& p);
// ||<xi>^s <tau + xi^2>^b u_hat||_{L2_xi L1_tau}
double ysb_norm(const SpaceTimeField& u, double s, double b);
// X^{s,1/2} + Y^{s,0}
double zs_norm(const SpaceTimeField& u, double s);

// Same norms applied to P_N u.
double block_xsb_norm(const SpaceTimeField& u, const XsbParams& p, DyadicIndex N);
double block_ysb_norm(const SpaceTimeField& u, double s, double b, DyadicIndex N);

// Norms of P_N u for every block of dyadic_range(u.domain), in order.
std::vector<double> block_xsb_norms(const SpaceTimeField& u, const XsbParams& p);
std::vector<double> block_ysb_norms(const SpaceTimeField& u, double s, double b);

// Dyadic-sup variants: ||P_1 u|| + max_{N>1} ||P_N u||.
double frak_norm(const SpaceTimeField& u, const XsbParams& p);
double cal_y_norm(const SpaceTimeField& u, double s, double b);
double cal_z_norm(const SpaceTimeField& u, double s);

// Norm on frak-X^{s,bx} cap cal-Y^{s,by}, taken as the larger of the two.
double frak_cal_y_norm(const SpaceTimeField& u, double s, double bx, double by);

// Time cutoff for the windowed extension.
struct TimeWindow {
  enum class Kind { Bump, Annulus };
  Kind kind = Kind::Bump;
  double scale = 1.0;

  // chi(t / scale)
  static TimeWindow bump(double scale) { return {Kind::Bump, scale}; }
  // chi_T(t) = chi(t/T) - chi(2t/T)
  static TimeWindow annulus(double T) { return {Kind::Annulus, T}; }

  double operator()(double t) const noexcept;
  // Closed hull of the support.
  std::pair<double, double> support() const noexcept;
  std::string describe() const;
};

// Multiplies the trajectory by the window in t and transforms to (xi, tau).
// The result is one admissible extension, so its Z-type norms bound the
// restriction norm from above. Throws ExtensionError when the window support
// leaves the trajectory span. A trailing slice is dropped when needed to get
// an odd sample count; the window vanishes there.
SpaceTimeField window_trajectory(const Trajectory& traj, const TimeWindow& w);

// Lattice Cauchy-Schwarz constant for Y^{s,b1} <= C X^{s,b2}:
// sup_xi (dtau sum_tau <tau + xi^2>^{2(b1-b2)})^{1/2}.
double xy_embedding_constant(const SpaceTimeField& u, double b1, double b2);

}  // namespace dnls
