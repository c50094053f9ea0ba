#pragma once

#include "pnwave/grid.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pnwave {

/// Result of |d/dx| applied to grid samples.
struct OperatorSample {
  Grid grid;
  std::vector<double> values;

  /// Periodic mean; zero up to rounding since the k = 0 symbol vanishes.
  double mean() const;
};

/// |d/dx| of the 2L-periodic extension of `u`: symbol |k_j|.
std::vector<double> apply_spectral(const Grid& g, std::span<const double> u);
void apply_spectral(SpectralWorkspace& ws, std::span<const double> u, std::span<double> out);
OperatorSample apply_spectral_sample(const Grid& g, std::span<const double> u);

/// H{u'}: spectral derivative (symbol i k) followed by the Hilbert
/// transform (symbol -i sign k). Mathematically identical to apply_spectral.
std::vector<double> hilbert_of_derivative(const Grid& g, std::span<const double> u);

/// Spectral derivative of periodic samples; the Nyquist mode is dropped.
std::vector<double> spectral_derivative(const Grid& g, std::span<const double> u);
void spectral_derivative(SpectralWorkspace& ws, std::span<const double> u, std::span<double> out);

struct FarFieldLimits {
  double minus_infinity = 0.0;
  double plus_infinity = 0.0;
};

struct OracleValue {
  double value = 0.0;
  /// Bound on the neglected part beyond the cutoff, (4/pi) sup|u| / R. When
  /// far-field limits are supplied the leading part of that tail is added
  /// analytically and this bound is conservative.
  double tail_bound = 0.0;
};

/// Reference value of |d/dx| u(x) from the second-difference singular integral
///   -(1/pi) int_0^R (u(x+y) - 2u(x) + u(x-y)) / y^2 dy
/// using composite Gauss-Legendre panels of `quad_points` nodes, geometrically
/// graded away from y = 0. With `limits`, the tail beyond R is approximated by
/// -(u(+inf) + u(-inf) - 2u(x)) / (pi R).
OracleValue oracle_pv(const std::function<double(double)>& u, double x, double cutoff,
                      int quad_points = 24, std::optional<FarFieldLimits> limits = std::nullopt);

}  // namespace pnwave
