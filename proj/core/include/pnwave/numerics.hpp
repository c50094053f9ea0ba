#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pnwave {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope x. Requires >= 2 distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int order);

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Bracketed 1-D minimization (Brent's golden-section/parabolic method).
ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              int bits = 40);

double max_abs(std::span<const double> v);

}  // namespace pnwave
