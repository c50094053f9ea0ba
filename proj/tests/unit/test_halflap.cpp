#include <pnwave/halflap.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace pnwave;

namespace {
constexpr double kPi = std::numbers::pi;

double poisson(double a, double x) { return a / (kPi * (1.0 + a * a * x * x)); }

std::vector<double> band_limited(const Grid& g, unsigned seed, int modes = 12) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> u(g.size(), 0.0);
  for (int m = 1; m <= modes; ++m) {
    const double a = d(rng), b = d(rng);
    for (std::size_t j = 0; j < u.size(); ++j) {
      const double th = kPi * m * g.point(j) / g.half_length();
      u[j] += a * std::cos(th) + b * std::sin(th);
    }
  }
  return u;
}
}  // namespace

TEST(HalfLaplacian, AnnihilatesConstants) {
  const Grid g = make_grid(20.0, 256);
  const auto r = apply_spectral(g, std::vector<double>(256, 3.7));
  for (double v : r) EXPECT_LT(std::abs(v), 1e-12);
}

TEST(HalfLaplacian, CosineEigenfunction) {
  const Grid g = make_grid(20.0, 256);
  std::vector<double> u(256);
  for (std::size_t j = 0; j < 256; ++j) u[j] = std::cos(kPi * g.point(j) / 20.0);
  const auto r = apply_spectral(g, u);
  for (std::size_t j = 0; j < 256; ++j) EXPECT_NEAR(r[j], kPi / 20.0 * u[j], 1e-10);
}

TEST(HalfLaplacian, PoissonKernelAtOrigin) {
  const Grid g = make_grid(200.0, 16384);
  std::vector<double> u(g.size());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = poisson(1.0, g.point(j));
  const auto r = apply_spectral(g, u);
  EXPECT_NEAR(r[g.size() / 2], 1.0 / kPi, 2e-3);
}

TEST(HalfLaplacian, MeanIsZero) {
  const Grid g = make_grid(10.0, 512);
  std::vector<double> u(g.size());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::exp(-g.point(j) * g.point(j)) + 0.4;
  EXPECT_LT(std::abs(apply_spectral_sample(g, u).mean()), 1e-10);
}

TEST(HalfLaplacian, LinearSymmetricPositive) {
  const Grid g = make_grid(15.0, 512);
  const auto u = band_limited(g, 1), v = band_limited(g, 2);
  std::vector<double> w(g.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = 2.0 * u[j] - 0.7 * v[j];
  const auto au = apply_spectral(g, u), av = apply_spectral(g, v), aw = apply_spectral(g, w);
  double uav = 0, auv = 0, uau = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    EXPECT_NEAR(aw[j], 2.0 * au[j] - 0.7 * av[j], 1e-12);
    uav += u[j] * av[j];
    auv += au[j] * v[j];
    uau += u[j] * au[j];
  }
  EXPECT_NEAR(uav, auv, 1e-10 * std::abs(uau));
  EXPECT_GE(g.spacing() * uau, 0.0);
}

TEST(HalfLaplacian, HilbertOfDerivativeAgrees) {
  const Grid g = make_grid(15.0, 512);
  const auto u = band_limited(g, 7);
  const auto a = apply_spectral(g, u), b = hilbert_of_derivative(g, u);
  for (std::size_t j = 0; j < u.size(); ++j) EXPECT_NEAR(a[j], b[j], 1e-10);
  std::vector<double> s(g.size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = std::sin(kPi * g.point(j) / 15.0);
  const auto hs = hilbert_of_derivative(g, s);
  for (std::size_t j = 0; j < s.size(); ++j) EXPECT_NEAR(hs[j], kPi / 15.0 * s[j], 1e-12);
  for (double v : hilbert_of_derivative(g, std::vector<double>(512, -2.0))) {
    EXPECT_LT(std::abs(v), 1e-12);
  }
}

TEST(HalfLaplacian, LengthMismatch) {
  const Grid g = make_grid(1.0, 16);
  EXPECT_THROW(apply_spectral(g, std::vector<double>(8)), std::invalid_argument);
  EXPECT_THROW(hilbert_of_derivative(g, std::vector<double>(8)), std::invalid_argument);
}

TEST(Oracle, ArctanOddAtOrigin) {
  const auto r = oracle_pv([](double x) { return std::atan(x); }, 0.0, 1e4, 24,
                           FarFieldLimits{-kPi / 2, kPi / 2});
  EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(Oracle, PoissonKernel) {
  // |d| P_a(x) = (a^2 - x^2) / (pi (a^2 + x^2)^2) with P_a = a/(pi(a^2+x^2))
  const auto f = [](double x) { return poisson(1.0, x); };
  EXPECT_NEAR(oracle_pv(f, 0.0, 1e4, 24, FarFieldLimits{}).value, 1.0 / kPi, 1e-6);
  for (double x : {0.5, 2.0, 7.0}) {
    EXPECT_NEAR(oracle_pv(f, x, 1e4, 24, FarFieldLimits{}).value,
                (1 - x * x) / (kPi * std::pow(1 + x * x, 2)), 1e-6);
  }
}

TEST(Oracle, ArctanFront) {
  const auto psi = [](double x) { return 0.5 + std::atan(x) / kPi; };
  const auto r = oracle_pv(psi, 1.0, 1e4, 24, FarFieldLimits{0.0, 1.0});
  EXPECT_NEAR(r.value, 1.0 / (2.0 * kPi), 1e-6);
}

TEST(Oracle, TailBoundReported) {
  const auto r = oracle_pv([](double x) { return std::cos(x); }, 0.3, 100.0);
  EXPECT_NEAR(r.tail_bound, 4.0 / (kPi * 100.0), 1e-8);
}

TEST(Oracle, NonFiniteThrows) {
  EXPECT_THROW(oracle_pv([](double x) { return 1.0 / (x - 1.0) / 0.0; }, 0.0, 10.0),
               std::domain_error);
}

TEST(Oracle, MatchesSpectralOnConcentratedProfiles) {
  const Grid g = make_grid(200.0, 8192);
  for (double a : {1.0, 3.0}) {
    std::vector<double> u(g.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = poisson(a, g.point(j));
    const auto r = apply_spectral(g, u);
    for (std::size_t j = g.size() / 4; j <= 3 * g.size() / 4; j += 512) {
      const auto f = [a](double x) { return poisson(a, x); };
      EXPECT_NEAR(r[j], oracle_pv(f, g.point(j), 1e4, 24, FarFieldLimits{}).value, 5.0 / 200.0);
    }
  }
}
