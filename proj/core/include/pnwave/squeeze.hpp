#pragma once

#include "pnwave/evolution.hpp"
#include "pnwave/potential.hpp"
#include "pnwave/wave_analysis.hpp"

#include <span>
#include <vector>

namespace pnwave {

/// How sigma is taken from sigma_raw = (sup|F''| + beta) / (beta inf_{|y|<R0} eta'(y)).
///   printed:    sigma = min(sigma_raw, 1)
///   sufficient: sigma = sigma_raw, the value the center-region sign estimate needs.
enum class SigmaRule { printed, sufficient };

struct SqueezeParams {
  double beta = 0.0;
  double sigma = 0.0;
  double sigma_raw = 0.0;
  bool sigma_capped = false;
  double delta = 0.0;
  double delta1 = 0.0;
  double l = 0.0;
  /// Half-width, measured from the wave phase, outside which eta is within
  /// (delta0 - delta1)/2 of the wells.
  double R0 = 0.0;
  double eta_prime_min = 0.0;
  double f2_sup = 0.0;
};

SqueezeParams compute_squeeze_params(const BistablePotential& p, const TravelingWave& w,
                                     double delta1, double delta, double l = 0.0,
                                     SigmaRule rule = SigmaRule::printed);

/// w_i(t, x) = eta(zeta_i) + i delta e^{-beta t},
/// zeta_i = x - c t + i l + i sigma delta (1 - e^{-beta t}), i = -1 or +1.
double build_subsuper(const WaveProfile& eta, const SqueezeParams& sp, int i, double t, double x);
double build_subsuper(const TravelingWave& w, const SqueezeParams& sp, int i, double t, double x);

/// (d/dt + |d/dx|) w_i + F'(w_i), before multiplication by i.
double subsuper_operator(const WaveProfile& eta, const BistablePotential& p,
                         const SqueezeParams& sp, int i, double t, double x);

struct ResidualViolation {
  int i = 0;
  double t = 0.0;
  double x = 0.0;
  double value = 0.0;
};

struct SubSuperReport {
  double min_super = 0.0;  ///< min of  (d/dt + |d/dx|) w_+1 + F'(w_+1)
  double min_sub = 0.0;    ///< min of -((d/dt + |d/dx|) w_-1 + F'(w_-1))
  ResidualViolation worst;
  std::vector<ResidualViolation> violations;
  double wave_residual = 0.0;
  double tol = 0.0;
  std::size_t samples = 0;
  bool passed = false;
};

/// Evaluates i [(d/dt + |d/dx|) w_i + F'(w_i)] for i = +-1 on the product of
/// `times` and `points` and requires every value >= -tol, where tol defaults
/// to 10x the wave's Weertman residual.
SubSuperReport verify_subsuper_residual(const BistablePotential& p, const TravelingWave& w,
                                        const SqueezeParams& sp, std::span<const double> times,
                                        std::span<const double> points, double tol = -1.0);

struct ComparisonReport {
  double min_gap = 0.0;
  double worst_t = 0.0;
  double worst_x = 0.0;
  bool ordered = false;
  bool strict_checked = false;
  double strict_gap_min = 0.0;
  bool strict_ok = true;
  double tol = 1e-9;
  bool passed = false;
};

/// Evolves ordered initial data u0_low <= u0_high with a shared reference
/// profile and checks u_low <= u_high + tol at each sampled time. When the
/// initial gap has positive integral on [0, 1], also requires the gap to be
/// strictly positive everywhere at t = 1.
ComparisonReport verify_comparison(const BistablePotential& p, const Grid& g,
                                   std::span<const double> u0_low,
                                   std::span<const double> u0_high, EvolveConfig cfg,
                                   std::span<const double> times, double tol = 1e-9);

struct SandwichReport {
  double lower_margin = 0.0;  ///< min over samples of u - w_-1
  double upper_margin = 0.0;  ///< min over samples of w_+1 - u
  double worst_t = 0.0;
  bool initial_contained = false;
  bool passed = false;
};

/// Starts from u0 with w_-1(0, .) <= u0 <= w_+1(0, .) and checks that the
/// evolved u stays between w_-1(t, .) and w_+1(t, .) on |x| <= L/2.
SandwichReport verify_sandwich(const BistablePotential& p, const TravelingWave& w,
                               const SqueezeParams& sp, std::span<const double> u0,
                               EvolveConfig cfg, std::span<const double> times,
                               double tol = 1e-9);

}  // namespace pnwave
