#pragma once

#include <pnwave/evolution.hpp>
#include <pnwave/grid.hpp>
#include <pnwave/potential.hpp>
#include <pnwave/squeeze.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace pnwave::app {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every tunable of a run. Keys in config files and --set overrides use the
/// field names below.
struct RunConfig {
  // potential
  std::string potential = "sinusoidal";
  double A = 1.0;
  double drive = 0.0;
  double hump = 1.0;
  double delta0 = 0.1;
  // grid
  double L = 200.0;
  std::int64_t N = 8192;
  // evolution
  double dt = 0.01;
  double t_end = 100.0;
  std::int64_t order = 2;
  double recenter_every = 0.0;
  double recenter_threshold = 0.0;
  double record_every = 0.25;
  bool range_check = true;
  std::string initial = "step";
  double initial_width = 1.0;
  double initial_amplitude = 0.5;
  double ref_width = 0.0;
  // analysis
  double tail_x_lo = 20.0;
  double tail_x_hi = 80.0;
  double idc2_r_min = 20.0;
  double idc2_r_max = 90.0;
  std::int64_t idc2_r_count = 15;
  bool rate_fit_required = false;
  double c_abs_max = -1.0;
  // squeeze-test
  bool squeeze = false;
  double squeeze_delta1 = 0.05;
  double squeeze_delta = 0.02;
  double squeeze_l = 0.0;
  std::string sigma_rule = "sufficient";
  std::int64_t squeeze_times = 25;
  double squeeze_t_max = 12.0;
  std::int64_t squeeze_points = 64;
  double squeeze_x_span = 30.0;
  double squeeze_floor = 5e-3;
  std::int64_t comparison_pairs = 2;
  // operator-check
  std::string oc_profile = "poisson";
  double oc_width = 1.0;
  std::int64_t oc_points = 41;
  double oc_cutoff = 1e4;
  std::int64_t oc_quad_points = 24;
  double oc_threshold = -1.0;
  // randomized suites
  std::uint64_t seed = 1;

  Grid grid() const;
  BistablePotential make_potential() const;
  EvolveConfig evolve_config() const;
  InitialSpec initial_spec() const;
  SigmaRule sigma() const;
  std::vector<double> idc2_radii() const;
  double operator_threshold() const;

  /// Every effective value, keyed like the config file.
  nlohmann::ordered_json to_json() const;
};

/// Builds a validated RunConfig from an optional JSON file, then applies
/// key=value overrides and the seed flag, in that order. Unknown keys, type
/// mismatches and constraint violations throw ConfigError naming the key.
RunConfig parse_config(const std::optional<std::filesystem::path>& path,
                       const std::vector<std::string>& overrides = {},
                       std::optional<std::uint64_t> seed = std::nullopt);

RunConfig config_from_json(const nlohmann::json& j);

/// Checks every module precondition reachable from the config.
void validate_config(const RunConfig& cfg);

}  // namespace pnwave::app
