#pragma once

#include <pnwave/evolution.hpp>
#include <pnwave/wave_analysis.hpp>

#include <random>
#include <utility>
#include <vector>

#include "pnwave_app/config.hpp"

namespace pnwave::app {

using Rng = std::mt19937_64;

/// Random admissible initial datum: a smooth front with bumps, or a rough
/// piecewise-constant staircase. Always inside the trusted range and near
/// the wells at the ends of the box.
std::vector<double> random_initial_data(const Grid& g, const BistablePotential& p, Rng& rng);

/// u_low <= u_high everywhere, with a gap of positive mass on [0, 1].
std::pair<std::vector<double>, std::vector<double>> random_ordered_pair(
    const Grid& g, const BistablePotential& p, Rng& rng);

struct WaveRun {
  BistablePotential potential;
  EvolveResult result;
  TravelingWave wave;
  DistanceSeries distances;
};

/// Evolves cfg's initial datum to t_end and extracts the wave. c comes from
/// front tracking.
WaveRun run_wave(const RunConfig& cfg);

}  // namespace pnwave::app
