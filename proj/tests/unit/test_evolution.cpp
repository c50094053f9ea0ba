#include <pnwave/evolution.hpp>
#include <pnwave/halflap.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pnwave;

namespace {
constexpr double kPi = std::numbers::pi;

double sup_diff(std::span<const double> a, std::span<const double> b) {
  double e = 0;
  for (std::size_t j = 0; j < a.size(); ++j) e = std::max(e, std::abs(a[j] - b[j]));
  return e;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}
}  // namespace

TEST(Reference, ClosedFormHalfLaplacian) {
  for (double a : {0.5, 1.0, 3.0}) {
    const ReferenceProfile ref(-1.0, 1.0, 0.7, a);
    const auto f = [&](double x) { return ref.value(x); };
    for (double x : {-5.0, 0.0, 0.7, 1.2, 9.0}) {
      EXPECT_NEAR(ref.half_laplacian(x),
                  oracle_pv(f, x, 1e5 / a, 24, FarFieldLimits{-1.0, 1.0}).value, 1e-6);
    }
    EXPECT_NEAR(ref.value(1e12), 1.0, 1e-9);
    EXPECT_NEAR(ref.value(-1e12), -1.0, 1e-9);
  }
  EXPECT_THROW(ReferenceProfile(0.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST(Reference, MatchedWidth) {
  EXPECT_NEAR(matched_reference_width(make_sinusoidal(2.0)), 2.0, 1e-12);
  EXPECT_NEAR(matched_reference_width(make_quartic()), 2.0, 1e-12);
}

TEST(Initial, StepBounds) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(50.0, 1024);
  const WaveState s = make_initial(g, p, InitialSpec{});
  double vmax = 0.0;
  for (double v : s.v) vmax = std::max(vmax, std::abs(v));
  EXPECT_LE(vmax, 0.5 + 1e-12);
  const auto u = s.u();
  for (std::size_t j = 0; j < u.size(); ++j) {
    EXPECT_NEAR(u[j], g.point(j) < 0 ? 0.0 : 1.0, 1e-12);
  }
}

TEST(Initial, RangeViolation) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(50.0, 256);
  InitialSpec spec;
  spec.kind = InitialKind::custom;
  spec.samples.assign(256, 0.0);
  for (std::size_t j = 128; j < 256; ++j) spec.samples[j] = 1.0;
  spec.samples[150] = 1.0 + 2 * p.delta0();
  const std::string msg = message_of([&] { make_initial(g, p, spec); });
  EXPECT_NE(msg.find("initial range violation"), std::string::npos) << msg;
  spec.samples[150] = 1.0;
  spec.samples[255] = 0.5;
  EXPECT_NE(message_of([&] { make_initial(g, p, spec); }).find("initial limit violation"),
            std::string::npos);
}

TEST(Initial, SmoothedStepTails) {
  const auto p = make_sinusoidal(1.0);
  const double L = 100.0;
  const Grid g = make_grid(L, 2048);
  InitialSpec spec;
  spec.kind = InitialKind::smoothed_step;
  spec.width = 1.0;
  const WaveState s = make_initial(g, p, spec);
  const double a = s.ref.width();
  const double bound = 1.0 / (kPi * a * L);
  EXPECT_LE(std::abs(s.v.front()), bound * 1.01);
  EXPECT_LE(std::abs(s.v.back()), bound * 1.01);
}

TEST(Initial, KindNames) {
  for (auto k : {InitialKind::step, InitialKind::smoothed_step, InitialKind::perturbed_wave,
                 InitialKind::custom}) {
    EXPECT_EQ(initial_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(initial_kind_from_string("bump"), std::invalid_argument);
}

TEST(Config, Guards) {
  const auto p = make_sinusoidal(1.0);
  EvolveConfig cfg;
  cfg.dt = 0.0;
  EXPECT_THROW(check_config(cfg, p), std::invalid_argument);
  cfg.dt = 0.5;  // above 0.2 / sup F''
  EXPECT_THROW(check_config(cfg, p), std::invalid_argument);
  cfg.dt = 0.01;
  EXPECT_NO_THROW(check_config(cfg, p));
}

TEST(Step, FlatStateIsInvariant) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(50.0, 512);
  WaveState s{0.0, g, ReferenceProfile(0.0, 0.0, 0.0, 1.0), std::vector<double>(512, 0.0)};
  EvolveConfig cfg;
  cfg.dt = 0.05;
  for (int i = 0; i < 40; ++i) s = step(s, p, cfg);
  EXPECT_NEAR(s.t, 2.0, 1e-12);
  for (double u : s.u()) EXPECT_NEAR(u, 0.0, 1e-12);
}

TEST(Step, ExactWaveIsStatic) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(200.0, 8192);
  InitialSpec spec;
  spec.kind = InitialKind::perturbed_wave;
  spec.amplitude = 0.0;
  const WaveState s0 = make_initial(g, p, spec);
  EvolveConfig cfg;
  cfg.dt = 1e-3;
  const WaveState s1 = step(s0, p, cfg);
  EXPECT_LE(sup_diff(s0.u(), s1.u()), 1e-6);
  // bitwise reproducible
  EXPECT_EQ(step(s0, p, cfg).v, s1.v);
}

TEST(Weertman, Residuals) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(200.0, 8192);
  const std::vector<double> zero(g.size(), 0.0);
  EXPECT_LE(weertman_residual(g, p, ReferenceProfile(0, 1, 0, 1.0), zero, 0.0).value, 1e-6);
  // psi with the wrong width is not a wave
  EXPECT_GT(weertman_residual(g, p, ReferenceProfile(0, 1, 0, 0.5), zero, 0.0).value, 0.01);
  EXPECT_EQ(weertman_residual(g, p, ReferenceProfile(0, 0, 0, 1.0), zero, 0.3).value, 0.0);
  std::vector<double> bump(g.size());
  for (std::size_t j = 0; j < bump.size(); ++j) bump[j] = -0.6 * std::exp(-g.point(j) * g.point(j));
  EXPECT_FALSE(weertman_residual(g, p, ReferenceProfile(0, 1, 0, 1.0), bump, 0.0).monotone);
}

TEST(Front, LinearInterpolation) {
  const Grid g = make_grid(4.0, 8);  // -4 .. 3
  const std::vector<double> u{0, 0, 0, 0.2, 0.8, 1, 1, 1};
  int crossings = 0;
  const auto x = front_position(g, u, 0.5, &crossings);
  ASSERT_TRUE(x);
  EXPECT_NEAR(*x, -1.0 + 0.5, 1e-12);
  EXPECT_EQ(crossings, 1);
  EXPECT_FALSE(front_position(g, std::vector<double>(8, 0.0), 0.5));
}

TEST(Evolve, TranslationEquivariance) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(80.0, 2048);
  const int m = 16;
  InitialSpec a;
  a.kind = InitialKind::custom;
  a.samples.resize(g.size());
  InitialSpec b = a;
  // built on the exact wave so that v vanishes near the box edges
  const auto datum = [](double x) {
    return 0.5 + std::atan(x) / kPi + 0.05 * std::exp(-(x - 1.0) * (x - 1.0));
  };
  for (std::size_t j = 0; j < g.size(); ++j) {
    a.samples[j] = datum(g.point(j));
    b.samples[j] = datum(g.point(j) - m * g.spacing());
  }
  EvolveConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 2.0;
  const auto ra = evolve(make_initial(g, p, a), p, cfg).final_state.u();
  const auto rb = evolve(make_initial(g, p, b), p, cfg).final_state.u();
  double err = 0.0;
  for (std::size_t j = g.size() / 4; j < 3 * g.size() / 4; ++j) {
    err = std::max(err, std::abs(rb[j + m] - ra[j]));
  }
  EXPECT_LT(err, 1e-10);
}

TEST(Evolve, SelfConvergenceOrder) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(40.0, 1024);
  InitialSpec spec;
  spec.kind = InitialKind::smoothed_step;
  const WaveState s0 = make_initial(g, p, spec);
  for (auto [order, expected] : {std::pair{EtdOrder::first, 1.0}, std::pair{EtdOrder::second, 2.0}}) {
    std::vector<std::vector<double>> u;
    for (double dt : {0.04, 0.02, 0.01}) {
      EvolveConfig cfg;
      cfg.dt = dt;
      cfg.t_end = 2.0;
      cfg.order = order;
      u.push_back(evolve(s0, p, cfg).final_state.u());
    }
    const double slope = std::log2(sup_diff(u[0], u[1]) / sup_diff(u[1], u[2]));
    EXPECT_GE(slope, expected - 0.1) << "order " << static_cast<int>(order);
  }
}

TEST(Evolve, RecordsAndRange) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(100.0, 2048);
  EvolveConfig cfg;
  cfg.t_end = 5.0;
  cfg.record_every = 0.5;
  cfg.keep_snapshots = true;
  const auto r = evolve(make_initial(g, p, InitialSpec{}), p, cfg);
  ASSERT_EQ(r.report.records.size(), 11u);
  EXPECT_EQ(r.report.snapshots.size(), 11u);
  EXPECT_NEAR(r.report.records.back().t, 5.0, 1e-12);
  for (const auto& rec : r.report.records) {
    EXPECT_GE(rec.umin, -p.delta0() - 1e-8);
    EXPECT_LE(rec.umax, 1.0 + p.delta0() + 1e-8);
  }
}

TEST(Evolve, BalancedStaysPut) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(100.0, 2048);
  EvolveConfig cfg;
  cfg.t_end = 20.0;
  const auto r = evolve(make_initial(g, p, InitialSpec{}), p, cfg);
  const auto& rec = r.report.records;
  const double x_end = rec.back().front;
  const double x_mid = rec[rec.size() / 2].front;
  EXPECT_LE(std::abs(x_end - x_mid) / 10.0, 1e-3);
}

TEST(Evolve, TiltedDriftsWithSignOfEnergyGap) {
  const auto p = make_tilted_sinusoidal(1.0, 0.01);
  const Grid g = make_grid(100.0, 4096);
  EvolveConfig cfg;
  cfg.t_end = 30.0;
  cfg.recenter_every = 0.5;
  cfg.recenter_threshold = 0.2;
  const auto r = evolve(make_initial(g, p, InitialSpec{}), p, cfg);
  const auto& rec = r.report.records;
  ASSERT_GT(rec.size(), 10u);
  EXPECT_GT(r.report.recenterings, 0);
  const double dF = p.F(p.eta_r()) - p.F(p.eta_l());
  for (std::size_t i = rec.size() / 2 + 1; i < rec.size(); ++i) {
    EXPECT_EQ(std::signbit(rec[i].front - rec[i - 1].front), std::signbit(dF));
  }
}

TEST(Evolve, FrontLeavesTrustedRegion) {
  const auto p = make_tilted_sinusoidal(1.0, 0.1);
  const Grid g = make_grid(40.0, 1024);
  EvolveConfig cfg;
  cfg.t_end = 200.0;
  cfg.range_check = false;
  const std::string msg = message_of([&] { evolve(make_initial(g, p, InitialSpec{}), p, cfg); });
  EXPECT_NE(msg.find("front left trusted region"), std::string::npos) << msg;
}

TEST(Evolve, RecenterKeepsU) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(50.0, 1024);
  EvolveConfig cfg;
  Evolver ev(make_initial(g, p, InitialSpec{}), p, cfg);
  ev.advance_to(1.0);
  const auto before = ev.state().u();
  ev.recenter(3.0);
  EXPECT_NEAR(ev.state().ref.center(), 3.0, 1e-15);
  EXPECT_LT(sup_diff(before, ev.state().u()), 1e-14);
}
