#pragma once

#include "pnwave/evolution.hpp"
#include "pnwave/grid.hpp"
#include "pnwave/potential.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pnwave {

enum class Side { left, right };

struct TailFit {
  double prefactor = 0.0;
  double exponent = 0.0;
  double r_squared = 0.0;
  /// |eta_l - eta_r| / (pi F''(well)), the predicted 1/x coefficient.
  double expected_prefactor = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

/// Converged profile eta = psi + v, its velocity c and phase xi (the
/// midpoint crossing). Tail fits are filled in by the analysis stage.
struct TravelingWave {
  Grid grid;
  ReferenceProfile ref;
  std::vector<double> v;
  std::vector<double> eta;
  double c = 0.0;
  double xi = 0.0;
  std::optional<TailFit> tail_left;
  std::optional<TailFit> tail_right;
};

TravelingWave make_traveling_wave(const WaveState& s, double c);

/// eta, eta' and |d/dx| eta anywhere on the line: band-limited interpolation
/// of v on [-L, L - h], continued beyond by the 1/x asymptote matched at the
/// edge sample (or the fitted tail prefactor when available).
class WaveProfile {
 public:
  explicit WaveProfile(const TravelingWave& w);

  double value(double y) const;
  double derivative(double y) const;
  double half_laplacian(double y) const;
  const TravelingWave& wave() const noexcept { return wave_; }

 private:
  bool inside(double y) const noexcept;
  double tail_prefactor(Side side) const noexcept;

  TravelingWave wave_;
  TrigInterpolant v_;
  TrigInterpolant v_lap_;
  double left_edge_, right_edge_;
  double left_prefactor_, right_prefactor_;
};

/// Least-squares slope of the front position over the last half of the run.
double measure_velocity_tracking(const RunReport& report);
double measure_velocity_tracking(std::span<const double> t, std::span<const double> front);

/// c = [F(eta_r) - F(eta_l)] / int |eta'|^2, with eta' = psi' + spectral v'.
double velocity_identity_energy(const TravelingWave& w, const BistablePotential& p);

/// int_{center - R}^{center + R} f for each R, integrating the piecewise
/// linear interpolant of the grid samples exactly.
std::vector<double> symmetric_truncated_integrals(const Grid& g, std::span<const double> f,
                                                  double center, std::span<const double> radii);

struct InverseRadiusFit {
  double limit = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Fits value(R) = limit + slope / R.
InverseRadiusFit extrapolate_inverse_radius(std::span<const double> radii,
                                            std::span<const double> values);

struct IntegralIdentity {
  double c = 0.0;
  InverseRadiusFit fit;
  std::vector<double> radii;
  std::vector<double> values;
};

/// c = lim (1/(eta_r - eta_l)) int_{-R}^{R} F'(eta), with the window centered
/// on the wave's phase and R -> infinity taken by the 1/R extrapolation.
IntegralIdentity velocity_identity_integral(const TravelingWave& w, const BistablePotential& p,
                                            std::span<const double> radii);

/// Log-log fit of |eta - well| against the distance from the phase over
/// [x_lo, x_hi] on the requested side.
TailFit fit_tail(const TravelingWave& w, const BistablePotential& p, Side side, double x_lo,
                 double x_hi);

struct RateFit {
  double K = 0.0;
  double kappa = 0.0;
  double r_squared = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double d_max = 0.0;
  double d_min = 0.0;
  std::size_t points = 0;

  double decades() const;
};

/// Fits d(t) = K exp(-kappa t) on the longest contiguous run of samples with
/// d in [1e-6, 1e-2]. Requires >= 20 samples with d in [1e-8, 1e-1].
RateFit fit_convergence_rate(std::span<const double> t, std::span<const double> d);

/// eta(x - s) sampled on the grid, with psi shifted analytically and v by a
/// spectral phase shift.
class ShiftedProfile {
 public:
  explicit ShiftedProfile(const TravelingWave& w);
  void evaluate(double shift, std::span<double> out);

 private:
  TravelingWave wave_;
  SpectralWorkspace ws_;
  std::vector<Complex> v_hat_, work_;
  std::vector<double> v_shift_;
};

struct ShiftDistance {
  double distance = 0.0;
  double shift = 0.0;
};

/// min_s sup_{|x| <= L/2} |u(x) - eta(x - s)|, searched in
/// [guess - bracket, guess + bracket].
ShiftDistance shift_distance(ShiftedProfile& eta, const Grid& g, std::span<const double> u,
                             double guess, double bracket);

struct DistanceSeries {
  std::vector<double> t;
  std::vector<double> d;
  std::vector<double> shift;
};

/// Shift-minimized distance of every stored snapshot to the wave.
DistanceSeries distance_series(const RunReport& report, const TravelingWave& w);

struct PhaseFit {
  double xi = 0.0;
  double distance = 0.0;
};

/// min over xi of sup_{|x| <= L/2} |u(x) - profile(x - xi)|.
PhaseFit fit_phase(const Grid& g, std::span<const double> u,
                   const std::function<double(double)>& profile, double guess, double bracket);

}  // namespace pnwave
