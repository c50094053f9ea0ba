#include <pnwave/wave_analysis.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pnwave;

namespace {
constexpr double kPi = std::numbers::pi;

// eta*(x) = 1/2 + arctan(x)/pi carried entirely by the reference profile
TravelingWave exact_wave(double L = 200.0, std::size_t N = 8192, double c = 0.0) {
  const Grid g = make_grid(L, N);
  WaveState s{0.0, g, ReferenceProfile(0.0, 1.0, 0.0, 1.0), std::vector<double>(N, 0.0)};
  return make_traveling_wave(s, c);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * i / double(n - 1);
  return out;
}
}  // namespace

TEST(Tracking, ExactLine) {
  std::vector<double> t, x;
  for (int i = 0; i < 40; ++i) {
    t.push_back(0.5 * i);
    x.push_back(0.3 * 0.5 * i);
  }
  EXPECT_NEAR(measure_velocity_tracking(t, x), 0.3, 1e-12);
  RunReport r;
  for (std::size_t i = 0; i < t.size(); ++i) r.records.push_back({t[i], x[i], 0, 0, 1});
  EXPECT_NEAR(measure_velocity_tracking(r), 0.3, 1e-12);
}

TEST(Tracking, TooFewSamples) {
  std::vector<double> t(15), x(15, 0.0);
  for (int i = 0; i < 15; ++i) t[i] = i;
  EXPECT_THROW(measure_velocity_tracking(t, x), std::invalid_argument);
}

TEST(Energy, BalancedIsZero) {
  EXPECT_EQ(velocity_identity_energy(exact_wave(), make_sinusoidal(1.0)), 0.0);
}

TEST(Energy, DenominatorOfExactWave) {
  // int (eta*')^2 = 1/(2 pi); with F(r)-F(l) = -0.01 the quotient is -0.02 pi
  const auto p = make_tilted_sinusoidal(1.0, 0.01);
  const double c = velocity_identity_energy(exact_wave(), p);
  EXPECT_NEAR(c, -0.01 * 2.0 * kPi, 1e-6);
}

TEST(Integral, SyntheticArctan) {
  const Grid g = make_grid(200.0, 8192);
  std::vector<double> f(g.size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = 1.0 / (1.0 + g.point(j) * g.point(j));
  const auto radii = linspace(20.0, 90.0, 15);
  const auto vals = symmetric_truncated_integrals(g, f, 0.0, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    EXPECT_NEAR(vals[i], 2.0 * std::atan(radii[i]), 1e-4);
  }
  const auto fit = extrapolate_inverse_radius(radii, vals);
  EXPECT_NEAR(fit.limit, kPi, 1e-4);
  EXPECT_NEAR(fit.slope, -2.0, 1e-2);
}

TEST(Integral, ExactWaveBalanced) {
  const auto w = exact_wave();
  const auto r = velocity_identity_integral(w, make_sinusoidal(1.0), linspace(20.0, 90.0, 15));
  EXPECT_LE(std::abs(r.c), 1e-4);
}

TEST(Integral, RadiiMustIncrease) {
  const auto w = exact_wave();
  const std::vector<double> bad{30.0, 20.0, 40.0};
  EXPECT_THROW(velocity_identity_integral(w, make_sinusoidal(1.0), bad), std::invalid_argument);
  const std::vector<double> big{20.0, 150.0};
  EXPECT_THROW(velocity_identity_integral(w, make_sinusoidal(1.0), big), std::invalid_argument);
}

TEST(Tail, ExactWave) {
  const auto w = exact_wave();
  const auto p = make_sinusoidal(1.0);
  for (Side s : {Side::left, Side::right}) {
    const TailFit t = fit_tail(w, p, s, 20.0, 80.0);
    EXPECT_NEAR(t.exponent, -1.0, 0.05);
    EXPECT_NEAR(t.prefactor, 1.0 / kPi, 0.1 / kPi);
    EXPECT_NEAR(t.expected_prefactor, 1.0 / kPi, 1e-12);
    EXPECT_GT(t.r_squared, 0.999);
  }
}

TEST(Tail, DerivativeBounds) {
  const WaveProfile prof(exact_wave());
  for (double x = 10.0; x <= 80.0; x += 0.5) {
    const double d = prof.derivative(x);
    EXPECT_GE(d, 0.9 / kPi / (x * x));
    EXPECT_LE(d, 1.1 / kPi / (x * x));
  }
}

TEST(Tail, WindowTooFar) {
  auto w = exact_wave();
  for (std::size_t j = 0; j < w.eta.size(); ++j) w.eta[j] = 0.5 + 0.5 * std::tanh(w.grid.point(j));
  try {
    fit_tail(w, make_sinusoidal(1.0), Side::right, 20.0, 80.0);
    FAIL() << "expected an error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("window too far"), std::string::npos);
  }
  EXPECT_THROW(fit_tail(exact_wave(), make_sinusoidal(1.0), Side::right, 5.0, 80.0),
               std::invalid_argument);
}

TEST(WaveProfile, MatchesReferenceInsideAndOutside) {
  const WaveProfile prof(exact_wave(50.0, 2048));
  for (double x : {-3.0, 0.1, 20.0}) {
    EXPECT_NEAR(prof.value(x), 0.5 + std::atan(x) / kPi, 1e-12);
    EXPECT_NEAR(prof.derivative(x), 1.0 / (kPi * (1 + x * x)), 1e-12);
    EXPECT_NEAR(prof.half_laplacian(x), x / (kPi * (1 + x * x)), 1e-12);
  }
  // beyond the box the 1/x tail takes over
  EXPECT_NEAR(prof.value(500.0), 1.0 - 1.0 / (500.0 * kPi), 1e-4);
  EXPECT_NEAR(prof.value(-500.0), 1.0 / (500.0 * kPi), 1e-4);
}

TEST(Rate, ExactExponential) {
  std::vector<double> t, d;
  for (int i = 0; i <= 200; ++i) {
    t.push_back(0.25 * i);
    d.push_back(3.0 * std::exp(-0.5 * 0.25 * i));
  }
  const RateFit f = fit_convergence_rate(t, d);
  EXPECT_NEAR(f.K, 3.0, 1e-10);
  EXPECT_NEAR(f.kappa, 0.5, 1e-10);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-10);
  EXPECT_GE(f.decades(), 3.0);
}

TEST(Rate, ConstantHasNoRegime) {
  std::vector<double> t(50), d(50, 1e-3);
  for (int i = 0; i < 50; ++i) t[i] = i;
  try {
    fit_convergence_rate(t, d);
    FAIL() << "expected an error";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("no exponential regime found"), std::string::npos);
  }
}

TEST(Shift, RecoversContinuousShift) {
  const auto w = exact_wave(100.0, 4096);
  ShiftedProfile eta(w);
  std::vector<double> u(w.grid.size());
  const double s = 0.3217;
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = 0.5 + std::atan(w.grid.point(j) - s) / kPi;
  const auto d = shift_distance(eta, w.grid, u, 0.0, 1.0);
  EXPECT_NEAR(d.shift, s, 1e-6);
  EXPECT_LT(d.distance, 1e-8);
  const auto pf = fit_phase(w.grid, u, [](double x) { return 0.5 + std::atan(x) / kPi; }, 0.0, 1.0);
  EXPECT_NEAR(pf.xi, s, 1e-6);
}

TEST(Convergence, MismatchedReferenceStillFindsTheWave) {
  const auto p = make_sinusoidal(1.0);
  const Grid g = make_grid(100.0, 4096);
  InitialSpec spec;
  spec.ref_width = 0.5;  // far field deliberately not the wave
  EvolveConfig cfg;
  cfg.t_end = 40.0;
  cfg.record_every = 0.25;
  cfg.keep_snapshots = true;
  const auto r = evolve(make_initial(g, p, spec), p, cfg);
  const WaveState& s = r.final_state;
  const auto u = s.u();
  const auto pf = fit_phase(g, u, [](double x) { return 0.5 + std::atan(x) / kPi; },
                            front_position(g, u, 0.5).value(), 1.0);
  EXPECT_LE(pf.distance, 2e-3);
  const double c = measure_velocity_tracking(r.report);
  EXPECT_LE(std::abs(c), 1e-3);
  EXPECT_LE(weertman_residual(g, p, s.ref, s.v, c).value, 5e-4);

  const auto w = make_traveling_wave(s, c);
  const auto d = distance_series(r.report, w);
  const RateFit f = fit_convergence_rate(d.t, d.d);
  EXPECT_GT(f.kappa, 0.0);
  EXPECT_GE(f.r_squared, 0.99);
  for (std::size_t i = d.d.size() / 4 + 1; i < d.d.size(); ++i) {
    EXPECT_LE(d.d[i], d.d[i - 1] + 1e-10) << "t=" << d.t[i];
  }
}
