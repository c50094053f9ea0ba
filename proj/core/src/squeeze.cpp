#include "pnwave/squeeze.hpp"

#include "pnwave/halflap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pnwave {

namespace {

constexpr std::size_t max_listed_violations = 32;

// Distance from the phase beyond which |eta - well| stays below `thr`,
// linearly interpolated between the bracketing samples.
double proximity_radius(const TravelingWave& w, double thr) {
  const Grid& g = w.grid;
  const double el = w.ref.eta_l(), er = w.ref.eta_r();
  double radius = 0.0;
  // Right side: last sample with |eta - eta_r| >= thr.
  for (std::size_t j = g.size() - 1; j > 0; --j) {
    if (g.point(j) <= w.xi) break;
    const double gap = std::abs(w.eta[j] - er);
    if (gap >= thr) {
      double x = g.point(j);
      if (j + 1 < g.size()) {
        const double next = std::abs(w.eta[j + 1] - er);
        x += g.spacing() * (gap - thr) / (gap - next);
      }
      radius = std::max(radius, x - w.xi);
      break;
    }
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g.point(j) >= w.xi) break;
    const double gap = std::abs(w.eta[j] - el);
    if (gap >= thr) {
      double x = g.point(j);
      if (j > 0) {
        const double prev = std::abs(w.eta[j - 1] - el);
        x -= g.spacing() * (gap - thr) / (gap - prev);
      }
      radius = std::max(radius, w.xi - x);
      break;
    }
  }
  return radius;
}

}  // namespace

SqueezeParams compute_squeeze_params(const BistablePotential& p, const TravelingWave& w,
                                     double delta1, double delta, double l, SigmaRule rule) {
  if (!(delta1 < p.delta0())) throw std::invalid_argument("squeeze: delta1 must be < delta0");
  if (!(delta1 > 0.0)) throw std::invalid_argument("squeeze: delta1 must be positive");
  if (!(delta > 0.0 && delta < delta1)) {
    throw std::invalid_argument("squeeze: delta must lie in (0, delta1)");
  }
  SqueezeParams sp;
  sp.beta = validate(p).beta;
  sp.delta = delta;
  sp.delta1 = delta1;
  sp.l = l;
  sp.f2_sup = p.f2_sup();
  sp.R0 = proximity_radius(w, 0.5 * (p.delta0() - delta1));

  const WaveProfile profile(w);
  const std::vector<double> dv = spectral_derivative(w.grid, w.v);
  double inf = std::min(profile.derivative(w.xi - sp.R0), profile.derivative(w.xi + sp.R0));
  for (std::size_t j = 0; j < w.grid.size(); ++j) {
    const double x = w.grid.point(j);
    if (std::abs(x - w.xi) < sp.R0) inf = std::min(inf, w.ref.derivative(x) + dv[j]);
  }
  if (!(inf > 0.0)) throw std::domain_error("squeeze: eta' is not positive on |y| < R0");
  sp.eta_prime_min = inf;
  sp.sigma_raw = (sp.f2_sup + sp.beta) / (sp.beta * inf);
  sp.sigma = rule == SigmaRule::printed ? std::min(sp.sigma_raw, 1.0) : sp.sigma_raw;
  sp.sigma_capped = sp.sigma < sp.sigma_raw;
  return sp;
}

double build_subsuper(const WaveProfile& eta, const SqueezeParams& sp, int i, double t, double x) {
  const double e = std::exp(-sp.beta * t);
  const double c = eta.wave().c;
  const double zeta = x - c * t + i * sp.l + i * sp.sigma * sp.delta * (1.0 - e);
  return eta.value(zeta) + i * sp.delta * e;
}

double build_subsuper(const TravelingWave& w, const SqueezeParams& sp, int i, double t, double x) {
  return build_subsuper(WaveProfile(w), sp, i, t, x);
}

double subsuper_operator(const WaveProfile& eta, const BistablePotential& p,
                         const SqueezeParams& sp, int i, double t, double x) {
  const double e = std::exp(-sp.beta * t);
  const double c = eta.wave().c;
  const double zeta = x - c * t + i * sp.l + i * sp.sigma * sp.delta * (1.0 - e);
  const double value = eta.value(zeta);
  const double dt_w =
      eta.derivative(zeta) * (-c + i * sp.sigma * sp.delta * sp.beta * e) - i * sp.delta * sp.beta * e;
  return dt_w + eta.half_laplacian(zeta) + p.F1(value + i * sp.delta * e);
}

SubSuperReport verify_subsuper_residual(const BistablePotential& p, const TravelingWave& w,
                                        const SqueezeParams& sp, std::span<const double> times,
                                        std::span<const double> points, double tol) {
  SubSuperReport rep;
  rep.wave_residual = weertman_residual(w.grid, p, w.ref, w.v, w.c).value;
  rep.tol = tol >= 0.0 ? tol : 10.0 * rep.wave_residual;
  rep.min_super = rep.min_sub = std::numeric_limits<double>::infinity();
  rep.worst.value = std::numeric_limits<double>::infinity();
  const WaveProfile profile(w);
  for (int i : {-1, 1}) {
    for (double t : times) {
      for (double x : points) {
        const double v = i * subsuper_operator(profile, p, sp, i, t, x);
        ++rep.samples;
        double& slot = i > 0 ? rep.min_super : rep.min_sub;
        slot = std::min(slot, v);
        if (v < rep.worst.value) rep.worst = {i, t, x, v};
        if (v < -rep.tol && rep.violations.size() < max_listed_violations) {
          rep.violations.push_back({i, t, x, v});
        }
      }
    }
  }
  rep.passed = rep.worst.value >= -rep.tol;
  return rep;
}

ComparisonReport verify_comparison(const BistablePotential& p, const Grid& g,
                                   std::span<const double> u0_low,
                                   std::span<const double> u0_high, EvolveConfig cfg,
                                   std::span<const double> times, double tol) {
  if (u0_low.size() != g.size() || u0_high.size() != g.size()) {
    throw std::invalid_argument("comparison: length mismatch");
  }
  double initial_gap_01 = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (u0_low[j] > u0_high[j]) {
      throw std::invalid_argument("comparison: initial data are not ordered");
    }
    const double x = g.point(j);
    if (x >= 0.0 && x <= 1.0) initial_gap_01 += (u0_high[j] - u0_low[j]) * g.spacing();
  }

  InitialSpec low_spec;
  low_spec.kind = InitialKind::custom;
  low_spec.samples.assign(u0_low.begin(), u0_low.end());
  const WaveState low0 = make_initial(g, p, low_spec);
  InitialSpec high_spec = low_spec;
  high_spec.samples.assign(u0_high.begin(), u0_high.end());
  high_spec.ref = low0.ref;
  const WaveState high0 = make_initial(g, p, high_spec);

  cfg.recenter_every = 0.0;
  Evolver low(low0, p, cfg), high(high0, p, cfg);

  ComparisonReport rep;
  rep.tol = tol;
  rep.min_gap = std::numeric_limits<double>::infinity();
  rep.strict_checked = initial_gap_01 > 0.0;

  std::vector<double> checkpoints(times.begin(), times.end());
  if (rep.strict_checked) checkpoints.push_back(1.0);
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

  for (double t : checkpoints) {
    low.advance_to(t);
    high.advance_to(t);
    double gap_min = std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double gap = high.state().v[j] - low.state().v[j];
      if (gap < gap_min) {
        gap_min = gap;
        at = j;
      }
    }
    const bool sampled = std::find(times.begin(), times.end(), t) != times.end();
    if (sampled && gap_min < rep.min_gap) {
      rep.min_gap = gap_min;
      rep.worst_t = t;
      rep.worst_x = g.point(at);
    }
    if (rep.strict_checked && t == 1.0) {
      rep.strict_gap_min = gap_min;
      rep.strict_ok = gap_min > 0.0;
    }
  }
  rep.ordered = rep.min_gap >= -tol;
  rep.passed = rep.ordered && rep.strict_ok;
  return rep;
}

SandwichReport verify_sandwich(const BistablePotential& p, const TravelingWave& w,
                               const SqueezeParams& sp, std::span<const double> u0,
                               EvolveConfig cfg, std::span<const double> times, double tol) {
  const Grid& g = w.grid;
  if (u0.size() != g.size()) throw std::invalid_argument("sandwich: length mismatch");
  ShiftedProfile shifted(w);
  std::vector<double> lower(g.size()), upper(g.size());
  // On the grid, w_i(t, x) = eta(x - s_i) + i delta e^{-beta t} with
  // s_i = c t - i l - i sigma delta (1 - e^{-beta t}).
  auto barriers = [&](double t) {
    const double e = std::exp(-sp.beta * t);
    const double s_sub = w.c * t + sp.l + sp.sigma * sp.delta * (1.0 - e);
    const double s_super = w.c * t - sp.l - sp.sigma * sp.delta * (1.0 - e);
    shifted.evaluate(s_sub, lower);
    shifted.evaluate(s_super, upper);
    for (std::size_t j = 0; j < g.size(); ++j) {
      lower[j] -= sp.delta * e;
      upper[j] += sp.delta * e;
    }
  };

  SandwichReport rep;
  barriers(0.0);
  rep.initial_contained = true;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (u0[j] < lower[j] - tol || u0[j] > upper[j] + tol) {
      rep.initial_contained = false;
      break;
    }
  }
  if (!rep.initial_contained) return rep;

  InitialSpec spec;
  spec.kind = InitialKind::custom;
  spec.samples.assign(u0.begin(), u0.end());
  spec.ref = w.ref;
  cfg.recenter_every = 0.0;
  Evolver ev(make_initial(g, p, spec), p, cfg);

  rep.lower_margin = rep.upper_margin = std::numeric_limits<double>::infinity();
  const double half = g.half_length() / 2.0;
  std::vector<double> sorted(times.begin(), times.end());
  std::sort(sorted.begin(), sorted.end());
  for (double t : sorted) {
    ev.advance_to(t);
    const std::vector<double> u = ev.state().u();
    barriers(ev.state().t);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (std::abs(g.point(j)) > half) continue;
      const double lo = u[j] - lower[j];
      const double hi = upper[j] - u[j];
      if (std::min(lo, hi) < std::min(rep.lower_margin, rep.upper_margin)) {
        rep.worst_t = ev.state().t;
      }
      rep.lower_margin = std::min(rep.lower_margin, lo);
      rep.upper_margin = std::min(rep.upper_margin, hi);
    }
  }
  rep.passed = rep.lower_margin >= -tol && rep.upper_margin >= -tol;
  return rep;
}

}  // namespace pnwave
