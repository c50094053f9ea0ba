#pragma once

#include "pnwave/grid.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace pnwave {

/// Poisson kernel time; t = 0 stands for the identity.
struct KernelSpec {
  double t = 0.0;
};

/// K_t(x) = t / (pi (t^2 + x^2)), t > 0.
double kernel_value(double t, double x);

/// Exact L1 norm of dK_t/dx, 2/(pi t). The constant 2/pi is the sharp
/// universal constant C in |dK_t/dx|_1 <= C/t.
double kernel_derivative_l1(double t);

/// Exact homogeneous flow: inverse(exp(-|k| t) forward(u)).
std::vector<double> propagate(const Grid& g, double t, std::span<const double> u);
std::vector<double> propagate(const Grid& g, KernelSpec k, std::span<const double> u);

/// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2 with series
/// evaluation for |z| < 1e-4.
double phi1(double z);
double phi2(double z);

enum class EtdOrder { first = 1, second = 2 };

/// Nonlinear forcing g(v) written into `out`.
using Forcing = std::function<void(std::span<const double> v, std::span<double> out)>;

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponential time differencing for dv/dt = -|d/dx| v + g(v).
///
/// First order:  v+ = e^{-|k|dt} v + dt phi1(-|k|dt) g(v)
/// Second order: Cox-Matthews predictor-corrector with the extra term
///               dt phi2(-|k|dt) (g(a) - g(v)), a the first-order predictor.
class EtdStepper {
 public:
  EtdStepper(const Grid& g, double dt, EtdOrder order);

  double dt() const noexcept { return dt_; }
  EtdOrder order() const noexcept { return order_; }
  const Grid& grid() const noexcept { return ws_.grid(); }

  /// Advances `v` in place by dt. Throws NonFiniteError if g or the result
  /// stops being finite; `v` is left untouched in that case.
  void step(std::span<double> v, const Forcing& g);

 private:
  SpectralWorkspace ws_;
  double dt_;
  EtdOrder order_;
  std::vector<double> decay_, w1_, w2_;
  std::vector<Complex> v_hat_, g_hat_, a_hat_, g1_hat_;
  std::vector<double> g_, a_, g1_, next_;
};

/// One step of EtdStepper on a copy of `v`.
std::vector<double> duhamel_step(const Grid& g, double dt, std::span<const double> v,
                                 const Forcing& rhs, EtdOrder order = EtdOrder::second);

}  // namespace pnwave
