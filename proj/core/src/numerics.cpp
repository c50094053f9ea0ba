#include "pnwave/numerics.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pnwave {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("fit_line: need at least two samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    sse += r * r;
  }
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  return f;
}

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  // boost returns the non-negative zeros in increasing order.
  const auto zeros = boost::math::legendre_p_zeros<double>(order);
  QuadratureRule rule;
  auto add = [&](double z) {
    const double dp = boost::math::legendre_p_prime(order, z);
    rule.nodes.push_back(z);
    rule.weights.push_back(2.0 / ((1.0 - z * z) * dp * dp));
  };
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it > 0.0) add(-*it);
  }
  for (double z : zeros) add(z);
  return rule;
}

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              int bits) {
  if (!(hi > lo)) throw std::invalid_argument("minimize_scalar: empty bracket");
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::brent_find_minima(f, lo, hi, bits, iters);
  return {r.first, r.second};
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace pnwave
