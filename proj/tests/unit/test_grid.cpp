#include <pnwave/grid.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace pnwave;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}
}  // namespace

TEST(Grid, PointsAndSpacing) {
  const Grid g = make_grid(10.0, 8);
  EXPECT_DOUBLE_EQ(g.spacing(), 2.5);
  const double expected[] = {-10, -7.5, -5, -2.5, 0, 2.5, 5, 7.5};
  for (std::size_t j = 0; j < 8; ++j) EXPECT_DOUBLE_EQ(g.point(j), expected[j]);
  EXPECT_NEAR(g.spacing() * g.size(), 2.0 * g.half_length(), 1e-12);
}

TEST(Grid, Wavenumbers) {
  const Grid g = make_grid(1.0, 8);
  EXPECT_EQ(g.wavenumber(0), 0.0);
  EXPECT_NEAR(g.max_abs_wavenumber(), 4.0 * kPi, 1e-12);
  EXPECT_NEAR(std::abs(g.wavenumber(4)), 4.0 * kPi, 1e-12);
  EXPECT_NEAR(g.wavenumber(1), kPi, 1e-12);
  EXPECT_NEAR(g.wavenumber(7), -kPi, 1e-12);
  EXPECT_EQ(g.signed_index(4), -4);
}

TEST(Grid, RejectsBadArguments) {
  EXPECT_THROW(make_grid(10.0, 7), std::invalid_argument);
  EXPECT_THROW(make_grid(10.0, 6), std::invalid_argument);
  EXPECT_THROW(make_grid(0.0, 8), std::invalid_argument);
  EXPECT_THROW(make_grid(-1.0, 8), std::invalid_argument);
  try {
    make_grid(10.0, 7);
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("N must be even"), std::string::npos);
  }
  EXPECT_NO_THROW(make_grid(10.0, 1000));
}

TEST(Grid, ConstantHasOnlyZeroMode) {
  const Grid g = make_grid(5.0, 64);
  const std::vector<double> u(64, 2.3);
  const auto s = forward_transform(g, u);
  EXPECT_NEAR(s[0].real(), 2.3 * 10.0, 1e-12);
  for (std::size_t j = 1; j < s.size(); ++j) EXPECT_LT(std::abs(s[j]), 1e-12);
}

TEST(Grid, CosineHasTwoBins) {
  const Grid g = make_grid(3.0, 32);
  std::vector<double> u(32);
  for (std::size_t j = 0; j < 32; ++j) u[j] = std::cos(kPi * g.point(j) / 3.0);
  const auto s = forward_transform(g, u);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto jp = g.signed_index(j);
    if (jp == 1 || jp == -1) {
      EXPECT_NEAR(std::abs(s[j]), 3.0, 1e-12);  // h * N / 2 = L
    } else {
      EXPECT_LT(std::abs(s[j]), 1e-12);
    }
  }
}

TEST(Grid, RoundTripAndParseval) {
  const Grid g = make_grid(7.0, 256);
  const auto u = random_vector(256, 3);
  const auto s = forward_transform(g, u);
  const auto back = inverse_transform(g, s);
  double err = 0.0, lhs = 0.0, rhs = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    err = std::max(err, std::abs(back[j] - u[j]));
    lhs += g.spacing() * u[j] * u[j];
    rhs += std::norm(s[j]) / (2.0 * g.half_length());
  }
  EXPECT_LT(err, 1e-12);
  EXPECT_NEAR(lhs, rhs, 1e-12 * lhs);
}

TEST(Grid, LengthMismatchThrows) {
  const Grid g = make_grid(1.0, 16);
  std::vector<double> u(15, 0.0);
  EXPECT_THROW(forward_transform(g, u), std::invalid_argument);
  std::vector<Complex> s(15);
  EXPECT_THROW(inverse_transform(g, s), std::invalid_argument);
}

TEST(Grid, WorkspaceMatchesFullTransform) {
  const Grid g = make_grid(4.0, 128);
  const auto u = random_vector(128, 5);
  const auto full = forward_transform(g, u);
  SpectralWorkspace ws(g);
  std::vector<Complex> half(g.spectrum_size());
  ws.forward(u, half);
  for (std::size_t j = 0; j < half.size(); ++j) EXPECT_LT(std::abs(half[j] - full[j]), 1e-12);
  std::vector<double> back(128);
  ws.inverse(half, back);
  for (std::size_t j = 0; j < 128; ++j) EXPECT_NEAR(back[j], u[j], 1e-12);
}

TEST(Grid, TrigInterpolantReproducesBandLimited) {
  const Grid g = make_grid(kPi, 32);
  const auto f = [](double x) { return 0.3 + std::sin(2 * x) - 0.5 * std::cos(5 * x); };
  const auto df = [](double x) { return 2 * std::cos(2 * x) + 2.5 * std::sin(5 * x); };
  std::vector<double> u(32);
  for (std::size_t j = 0; j < 32; ++j) u[j] = f(g.point(j));
  const TrigInterpolant ti(g, u);
  for (double x : {-3.0, -1.234, 0.0, 0.77, 2.9, 7.5}) {
    EXPECT_NEAR(ti.value(x), f(x), 1e-12);
    EXPECT_NEAR(ti.derivative(x), df(x), 1e-11);
  }
  // interpolates the samples themselves, Nyquist included
  std::vector<double> alt(32);
  for (std::size_t j = 0; j < 32; ++j) alt[j] = (j % 2 ? -1.0 : 1.0);
  const TrigInterpolant nyq(g, alt);
  for (std::size_t j = 0; j < 32; ++j) EXPECT_NEAR(nyq.value(g.point(j)), alt[j], 1e-12);
}
