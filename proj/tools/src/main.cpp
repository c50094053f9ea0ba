#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pnwave_app/acceptance.hpp"
#include "pnwave_app/config.hpp"
#include "pnwave_app/io.hpp"
#include "pnwave_app/pipeline.hpp"

namespace fs = std::filesystem;
using namespace pnwave::app;

namespace {

struct CommonFlags {
  std::string config;
  std::string out = "pnwave-out";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--seed", seed, "seed for randomized suites");
    cmd->add_option("--set", sets, "override a config key (key=value)");
  }

  RunConfig load() const {
    std::optional<fs::path> path;
    if (!config.empty()) path = config;
    return parse_config(path, sets, seed);
  }
};

void print_json(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pnwave: fractional Allen-Cahn fronts and their traveling waves"};
  app.require_subcommand(1);

  CommonFlags evolve_f, analyze_f, oc_f, squeeze_f, run_f;
  std::string analyze_in, squeeze_in;

  auto* evolve_cmd = app.add_subcommand("evolve", "evolve to t_end and write profiles");
  evolve_f.attach(evolve_cmd);

  auto* analyze_cmd = app.add_subcommand("analyze", "velocities, tails and rate of a run");
  analyze_f.attach(analyze_cmd);
  analyze_cmd->add_option("--in", analyze_in, "run directory (defaults to --out)");

  auto* oc_cmd = app.add_subcommand("operator-check", "spectral operator against quadrature");
  oc_f.attach(oc_cmd);

  auto* squeeze_cmd =
      app.add_subcommand("squeeze-test", "sub/super-solution and comparison checks");
  squeeze_f.attach(squeeze_cmd);
  squeeze_cmd->add_option("--in", squeeze_in,
                          "run directory holding a converged wave (evolves first if absent)");

  auto* run_cmd = app.add_subcommand("run", "evolve, analyze and optionally squeeze-test");
  run_f.attach(run_cmd);

  std::uint64_t acc_seed = 1;
  std::string acc_scratch;
  std::vector<int> acc_only;
  auto* acc_cmd = app.add_subcommand("all-acceptance", "run the acceptance suite");
  acc_cmd->add_option("--seed", acc_seed, "seed for randomized criteria");
  acc_cmd->add_option("--out", acc_scratch, "scratch directory for determinism runs");
  acc_cmd->add_option("--only", acc_only, "criterion numbers to run");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*evolve_cmd) {
      const RunConfig cfg = evolve_f.load();
      const WaveRun run = evolve_stage(cfg, evolve_f.out);
      std::cout << "t=" << run.result.final_state.t << " c=" << run.wave.c
                << " xi=" << run.wave.xi << " -> " << evolve_f.out << "\n";
    } else if (*analyze_cmd) {
      const RunConfig cfg = analyze_f.load();
      print_json(analyze_stage(cfg, analyze_in.empty() ? analyze_f.out : analyze_in));
    } else if (*oc_cmd) {
      const RunConfig cfg = oc_f.load();
      fs::create_directories(oc_f.out);
      const auto r = operator_check_stage(cfg, oc_f.out);
      print_json(r);
      return r["passed"].get<bool>() ? 0 : 1;
    } else if (*squeeze_cmd) {
      const RunConfig cfg = squeeze_f.load();
      fs::path dir = squeeze_in;
      if (dir.empty() || !fs::exists(dir / "state.json")) {
        dir = squeeze_in.empty() ? fs::path(squeeze_f.out) : dir;
        evolve_stage(cfg, dir);
      }
      const auto r = squeeze_stage(cfg, dir);
      print_json(r);
      return r["passed"].get<bool>() ? 0 : 1;
    } else if (*run_cmd) {
      const RunConfig cfg = run_f.load();
      print_json(run_pipeline(cfg, run_f.out));
    } else if (*acc_cmd) {
      AcceptanceOptions opt;
      opt.seed = acc_seed;
      opt.scratch = acc_scratch;
      opt.only.insert(acc_only.begin(), acc_only.end());
      opt.log = &std::cout;
      const auto results = run_acceptance(opt);
      int failed = 0;
      for (const auto& r : results) failed += r.passed ? 0 : 1;
      std::cout << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size()
                << " criteria passed\n";
      return failed == 0 ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const StageError& e) {
    std::cerr << "stage failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
