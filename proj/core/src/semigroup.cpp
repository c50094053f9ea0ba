#include "pnwave/semigroup.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pnwave {

namespace {

constexpr double series_cutoff = 1e-4;

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

double kernel_value(double t, double x) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_value: t must be positive");
  return t / (std::numbers::pi * (t * t + x * x));
}

double kernel_derivative_l1(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_derivative_l1: t must be positive");
  const double value = 2.0 / (std::numbers::pi * t);
  constexpr double universal_constant = 2.0 / std::numbers::pi;
  if (value * t > universal_constant * (1.0 + 1e-15)) {
    throw std::logic_error("kernel_derivative_l1: scaling bound violated");
  }
  return value;
}

std::vector<double> propagate(const Grid& g, double t, std::span<const double> u) {
  if (t < 0.0 || !std::isfinite(t)) throw std::invalid_argument("propagate: t must be >= 0");
  if (u.size() != g.size()) throw std::invalid_argument("propagate: length mismatch");
  if (t == 0.0) return {u.begin(), u.end()};
  SpectralWorkspace ws(g);
  std::vector<double> symbol(g.spectrum_size());
  for (std::size_t j = 0; j < symbol.size(); ++j) symbol[j] = std::exp(-std::abs(g.wavenumber(j)) * t);
  std::vector<double> out(g.size());
  apply_symbol(ws, symbol, u, out);
  return out;
}

std::vector<double> propagate(const Grid& g, KernelSpec k, std::span<const double> u) {
  return propagate(g, k.t, u);
}

double phi1(double z) {
  if (std::abs(z) < series_cutoff) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < series_cutoff) return 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
  return (std::expm1(z) - z) / (z * z);
}

EtdStepper::EtdStepper(const Grid& g, double dt, EtdOrder order)
    : ws_(g), dt_(dt), order_(order) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  const std::size_t m = g.spectrum_size();
  decay_.resize(m);
  w1_.resize(m);
  w2_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double z = -std::abs(g.wavenumber(j)) * dt;
    decay_[j] = std::exp(z);
    w1_[j] = dt * phi1(z);
    w2_[j] = dt * phi2(z);
  }
  v_hat_.resize(m);
  g_hat_.resize(m);
  a_hat_.resize(m);
  g1_hat_.resize(m);
  g_.resize(g.size());
  a_.resize(g.size());
  g1_.resize(g.size());
  next_.resize(g.size());
}

void EtdStepper::step(std::span<double> v, const Forcing& g) {
  if (v.size() != grid().size()) throw std::invalid_argument("EtdStepper: length mismatch");
  g(v, g_);
  if (!all_finite(g_)) throw NonFiniteError("non-finite forcing");
  ws_.forward(v, v_hat_);
  ws_.forward(g_, g_hat_);
  const std::size_t m = v_hat_.size();
  for (std::size_t j = 0; j < m; ++j) a_hat_[j] = decay_[j] * v_hat_[j] + w1_[j] * g_hat_[j];
  if (order_ == EtdOrder::first) {
    ws_.inverse(a_hat_, next_);
  } else {
    ws_.inverse(a_hat_, a_);
    g(a_, g1_);
    if (!all_finite(g1_)) throw NonFiniteError("non-finite forcing");
    ws_.forward(g1_, g1_hat_);
    for (std::size_t j = 0; j < m; ++j) a_hat_[j] += w2_[j] * (g1_hat_[j] - g_hat_[j]);
    ws_.inverse(a_hat_, next_);
  }
  if (!all_finite(next_)) throw NonFiniteError("non-finite state");
  std::copy(next_.begin(), next_.end(), v.begin());
}

std::vector<double> duhamel_step(const Grid& g, double dt, std::span<const double> v,
                                 const Forcing& rhs, EtdOrder order) {
  EtdStepper stepper(g, dt, order);
  std::vector<double> out(v.begin(), v.end());
  stepper.step(out, rhs);
  return out;
}

}  // namespace pnwave
