#include <benchmark/benchmark.h>

#include <pnwave/evolution.hpp>
#include <pnwave/halflap.hpp>

#include <cmath>
#include <numbers>

using namespace pnwave;

namespace {

std::vector<double> poisson_samples(const Grid& g) {
  std::vector<double> u(g.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    u[j] = 1.0 / (std::numbers::pi * (1.0 + g.point(j) * g.point(j)));
  }
  return u;
}

void BM_ApplySpectral(benchmark::State& state) {
  const Grid g = make_grid(200.0, static_cast<std::size_t>(state.range(0)));
  SpectralWorkspace ws(g);
  const auto u = poisson_samples(g);
  std::vector<double> out(g.size());
  for (auto _ : state) {
    apply_spectral(ws, u, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ApplySpectral)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_EvolverStep(benchmark::State& state) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(200.0, static_cast<std::size_t>(state.range(0)));
  EvolveConfig cfg;
  cfg.order = state.range(1) == 1 ? EtdOrder::first : EtdOrder::second;
  Evolver ev(make_initial(g, p, InitialSpec{}), p, cfg);
  for (auto _ : state) ev.step();
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvolverStep)->ArgsProduct({{1 << 12, 1 << 13, 1 << 14}, {1, 2}});

void BM_OraclePv(benchmark::State& state) {
  const auto f = [](double x) { return 1.0 / (std::numbers::pi * (1.0 + x * x)); };
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_pv(f, 0.7, 1e4, q, FarFieldLimits{}));
  }
}
BENCHMARK(BM_OraclePv)->Arg(8)->Arg(24)->Arg(48);

}  // namespace

BENCHMARK_MAIN();
