#include "pnwave_app/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pnwave::app {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

std::vector<double> random_initial_data(const Grid& g, const BistablePotential& p, Rng& rng) {
  const double lo = p.eta_l() - p.delta0();
  const double hi = p.eta_r() + p.delta0();
  const double span = p.eta_r() - p.eta_l();
  const auto& x = g.points();
  std::vector<double> u(g.size());

  if (uniform(rng, 0.0, 1.0) < 0.25) {
    // staircase: wells outside, random plateaus in between
    const double a = uniform(rng, -30.0, -5.0);
    const double b = uniform(rng, 5.0, 30.0);
    const int pieces = 2 + static_cast<int>(uniform(rng, 0.0, 4.0));
    std::vector<double> cuts(pieces - 1), levels(pieces);
    for (auto& c : cuts) c = uniform(rng, a, b);
    std::sort(cuts.begin(), cuts.end());
    for (auto& l : levels) l = uniform(rng, lo, hi);
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (x[j] < a) {
        u[j] = p.eta_l();
      } else if (x[j] >= b) {
        u[j] = p.eta_r();
      } else {
        const auto k = std::upper_bound(cuts.begin(), cuts.end(), x[j]) - cuts.begin();
        u[j] = levels[static_cast<std::size_t>(k)];
      }
    }
    return u;
  }

  const double x0 = uniform(rng, -20.0, 20.0);
  const double a = uniform(rng, 0.3, 3.0);
  struct Bump {
    double amp, center, width;
  };
  std::vector<Bump> bumps(3);
  for (auto& b : bumps) {
    b = {uniform(rng, -0.3, 0.3) * span, uniform(rng, -30.0, 30.0), uniform(rng, 0.5, 5.0)};
  }
  for (std::size_t j = 0; j < u.size(); ++j) {
    double val = p.eta_l() + span * (0.5 + std::atan(a * (x[j] - x0)) / std::numbers::pi);
    for (const auto& b : bumps) {
      const double z = (x[j] - b.center) / b.width;
      val += b.amp * std::exp(-z * z);
    }
    u[j] = std::clamp(val, lo, hi);
  }
  return u;
}

std::pair<std::vector<double>, std::vector<double>> random_ordered_pair(
    const Grid& g, const BistablePotential& p, Rng& rng) {
  std::vector<double> low = random_initial_data(g, p, rng);
  const double hi = p.eta_r() + p.delta0();
  // keep room for the gap on [0, 1]
  for (std::size_t j = 0; j < low.size(); ++j) {
    const double x = g.point(j);
    if (x > -12.0 && x < 13.0) low[j] = std::min(low[j], hi - 0.5 * p.delta0());
  }
  const double c = uniform(rng, -1.0, 2.0);
  const double r = uniform(rng, 2.0, 10.0);
  const double amp = uniform(rng, 0.1, 0.5) * p.delta0();
  std::vector<double> high = low;
  for (std::size_t j = 0; j < high.size(); ++j) {
    const double z = (g.point(j) - c) / r;
    if (std::abs(z) < 1.0) {
      const double w = (1.0 - z * z) * (1.0 - z * z);
      high[j] = std::min(low[j] + amp * w, hi);
    }
  }
  return {std::move(low), std::move(high)};
}

WaveRun run_wave(const RunConfig& cfg) {
  const BistablePotential p = cfg.make_potential();
  const Grid g = cfg.grid();
  const WaveState s0 = make_initial(g, p, cfg.initial_spec());
  EvolveConfig ec = cfg.evolve_config();
  ec.keep_snapshots = true;
  EvolveResult result = evolve(s0, p, ec);
  const double c = measure_velocity_tracking(result.report);
  TravelingWave w = make_traveling_wave(result.final_state, c);
  DistanceSeries d = distance_series(result.report, w);
  return {p, std::move(result), std::move(w), std::move(d)};
}

}  // namespace pnwave::app
