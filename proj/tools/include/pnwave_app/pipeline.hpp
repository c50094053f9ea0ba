#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pnwave_app/config.hpp"
#include "pnwave_app/experiments.hpp"

namespace pnwave::app {

/// Failure inside one pipeline stage; stage() is "evolve", "analyze",
/// "squeeze-test" or "operator-check".
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Evolves and writes manifest.json, state.json, profiles.csv,
/// timeseries.csv and distances.csv into out.
WaveRun evolve_stage(const RunConfig& cfg, const std::filesystem::path& out);

/// Rebuilds the wave from the files of a run directory.
TravelingWave load_wave(const RunConfig& cfg, const std::filesystem::path& dir);

/// Reads a run directory and writes report.json. Returns the report.
nlohmann::ordered_json analyze_stage(const RunConfig& cfg, const std::filesystem::path& dir);

/// Sub/super-solution residuals, sandwich and comparison checks on the wave
/// stored in dir. Writes squeeze.json.
nlohmann::ordered_json squeeze_stage(const RunConfig& cfg, const std::filesystem::path& dir);

/// Spectral operator against the quadrature oracle; writes operator_check.csv.
nlohmann::ordered_json operator_check_stage(const RunConfig& cfg,
                                            const std::filesystem::path& out);

/// evolve, analyze, and squeeze-test when cfg.squeeze is set.
nlohmann::ordered_json run_pipeline(const RunConfig& cfg, const std::filesystem::path& out);

}  // namespace pnwave::app
