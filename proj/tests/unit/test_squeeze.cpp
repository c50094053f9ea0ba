#include <pnwave/squeeze.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pnwave;

namespace {
constexpr double kPi = std::numbers::pi;

// The sinusoidal A=1 wave is 1/2 + arctan(x)/pi exactly.
TravelingWave exact_wave() {
  const Grid g = make_grid(200.0, 8192);
  WaveState s{0.0, g, ReferenceProfile(0.0, 1.0, 0.0, 1.0), std::vector<double>(8192, 0.0)};
  return make_traveling_wave(s, 0.0);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * i / double(n - 1);
  return out;
}
}  // namespace

TEST(SqueezeParams, Validation) {
  const auto p = make_sinusoidal(1.0);
  const auto w = exact_wave();
  EXPECT_THROW(compute_squeeze_params(p, w, 0.1, 0.02), std::invalid_argument);
  EXPECT_THROW(compute_squeeze_params(p, w, 0.05, 0.05), std::invalid_argument);
  EXPECT_THROW(compute_squeeze_params(p, w, 0.05, 0.0), std::invalid_argument);
}

TEST(SqueezeParams, ProximityRadiusAndSigma) {
  const auto p = make_sinusoidal(1.0);
  const auto w = exact_wave();
  const SqueezeParams sp = compute_squeeze_params(p, w, 0.05, 0.02);
  // 1/2 - arctan(R)/pi = 0.025  =>  R = tan(0.475 pi)
  const double R0 = std::tan(0.475 * kPi);
  EXPECT_NEAR(sp.R0, R0, 1e-2);
  EXPECT_NEAR(sp.eta_prime_min, 1.0 / (kPi * (1 + R0 * R0)), 1e-5);
  EXPECT_NEAR(sp.beta, std::cos(0.2 * kPi), 1e-6);
  EXPECT_NEAR(sp.sigma_raw, (1.0 + sp.beta) / (sp.beta * sp.eta_prime_min), 1e-9);
  EXPECT_EQ(sp.sigma, 1.0);
  EXPECT_TRUE(sp.sigma_capped);
  const SqueezeParams big = compute_squeeze_params(p, w, 0.05, 0.02, 0.0, SigmaRule::sufficient);
  EXPECT_EQ(big.sigma, big.sigma_raw);
  EXPECT_FALSE(big.sigma_capped);
}

TEST(SubSuper, InitialValues) {
  const auto p = make_sinusoidal(1.0);
  const auto w = exact_wave();
  SqueezeParams sp = compute_squeeze_params(p, w, 0.05, 0.02, 0.5);
  for (double x : {-4.0, 0.0, 3.0}) {
    EXPECT_NEAR(build_subsuper(w, sp, 1, 0.0, x), 0.5 + std::atan(x + 0.5) / kPi + 0.02, 1e-12);
    EXPECT_NEAR(build_subsuper(w, sp, -1, 0.0, x), 0.5 + std::atan(x - 0.5) / kPi - 0.02, 1e-12);
  }
}

TEST(SubSuper, SufficientSigmaHoldsSignCondition) {
  const auto p = make_sinusoidal(1.0);
  const auto w = exact_wave();
  const auto sp = compute_squeeze_params(p, w, 0.05, 0.02, 0.0, SigmaRule::sufficient);
  const auto rep =
      verify_subsuper_residual(p, w, sp, linspace(0, 12, 25), linspace(-30, 30, 64), 5e-3);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.samples, 2u * 25u * 64u);
  EXPECT_GE(std::min(rep.min_super, rep.min_sub), -5e-3);
}

TEST(SubSuper, CappedSigmaFailsNearTheFront) {
  // sigma = 1 is too small to absorb F'' across the front
  const auto p = make_sinusoidal(1.0);
  const auto w = exact_wave();
  const auto sp = compute_squeeze_params(p, w, 0.05, 0.02, 0.0, SigmaRule::printed);
  const auto rep =
      verify_subsuper_residual(p, w, sp, linspace(0, 12, 25), linspace(-30, 30, 64), 5e-3);
  EXPECT_FALSE(rep.passed);
  EXPECT_LT(std::abs(rep.worst.x), 5.0);
  EXPECT_FALSE(rep.violations.empty());
}

TEST(Comparison, OrderedPairStaysOrdered) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(100.0, 2048);
  std::vector<double> lo(g.size()), hi(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.point(j);
    lo[j] = 0.5 + std::atan(x - 2.0) / kPi;
    hi[j] = std::min(lo[j] + 0.03 * std::exp(-x * x), 1.1);
  }
  EvolveConfig cfg;
  cfg.t_end = 5.0;
  const std::vector<double> times{0.5, 1.0, 2.0, 5.0};
  const auto r = verify_comparison(p, g, lo, hi, cfg, times);
  EXPECT_TRUE(r.ordered);
  EXPECT_TRUE(r.strict_checked);
  EXPECT_TRUE(r.strict_ok);
  EXPECT_GT(r.strict_gap_min, 0.0);
  EXPECT_TRUE(r.passed);
  EXPECT_THROW(verify_comparison(p, g, hi, lo, cfg, times), std::invalid_argument);
}

TEST(Sandwich, PerturbedWaveStaysBetweenBarriers) {
  const auto p = make_sinusoidal(1.0);
  const auto w = exact_wave();
  const auto sp = compute_squeeze_params(p, w, 0.05, 0.02, 0.0, SigmaRule::sufficient);
  std::vector<double> u0(w.grid.size());
  for (std::size_t j = 0; j < u0.size(); ++j) {
    const double x = w.grid.point(j);
    u0[j] = w.eta[j] + 0.01 * std::cos(x) * std::exp(-x * x / 100.0);
  }
  EvolveConfig cfg;
  const std::vector<double> times{0.5, 2.0, 5.0};
  const auto r = verify_sandwich(p, w, sp, u0, cfg, times);
  EXPECT_TRUE(r.initial_contained);
  EXPECT_TRUE(r.passed);
  EXPECT_GT(r.lower_margin, 0.0);
  EXPECT_GT(r.upper_margin, 0.0);
}

TEST(Sandwich, DatumOutsideBarriersIsReported) {
  const auto p = make_sinusoidal(1.0);
  const auto w = exact_wave();
  const auto sp = compute_squeeze_params(p, w, 0.05, 0.02, 0.0, SigmaRule::sufficient);
  std::vector<double> u0 = w.eta;
  u0[4096] += 0.05;
  EvolveConfig cfg;
  const std::vector<double> times{0.5};
  const auto r = verify_sandwich(p, w, sp, u0, cfg, times);
  EXPECT_FALSE(r.initial_contained);
  EXPECT_FALSE(r.passed);
}
