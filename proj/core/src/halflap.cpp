#include "pnwave/halflap.hpp"

#include "pnwave/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pnwave {

namespace {

constexpr double first_panel = 1e-2;

void check_size(const Grid& g, std::size_t n, const char* what) {
  if (n != g.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch");
  }
}

}  // namespace

double OperatorSample::mean() const {
  double s = 0.0;
  for (double v : values) s += v;
  return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

void apply_spectral(SpectralWorkspace& ws, std::span<const double> u, std::span<double> out) {
  const Grid& g = ws.grid();
  check_size(g, u.size(), "apply_spectral");
  check_size(g, out.size(), "apply_spectral");
  std::vector<Complex> spec(g.spectrum_size());
  ws.forward(u, spec);
  for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= std::abs(g.wavenumber(j));
  ws.inverse(spec, out);
}

std::vector<double> apply_spectral(const Grid& g, std::span<const double> u) {
  check_size(g, u.size(), "apply_spectral");
  SpectralWorkspace ws(g);
  std::vector<double> out(g.size());
  apply_spectral(ws, u, out);
  return out;
}

OperatorSample apply_spectral_sample(const Grid& g, std::span<const double> u) {
  return {g, apply_spectral(g, u)};
}

std::vector<double> hilbert_of_derivative(const Grid& g, std::span<const double> u) {
  check_size(g, u.size(), "hilbert_of_derivative");
  SpectralWorkspace ws(g);
  std::vector<Complex> spec(g.spectrum_size());
  ws.forward(u, spec);
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double k = g.wavenumber(j);
    const Complex derivative = i * k;
    const Complex hilbert = -i * static_cast<double>((k > 0) - (k < 0));
    spec[j] *= hilbert * derivative;
  }
  std::vector<double> out(g.size());
  ws.inverse(spec, out);
  return out;
}

void spectral_derivative(SpectralWorkspace& ws, std::span<const double> u, std::span<double> out) {
  const Grid& g = ws.grid();
  check_size(g, u.size(), "spectral_derivative");
  check_size(g, out.size(), "spectral_derivative");
  std::vector<Complex> spec(g.spectrum_size());
  ws.forward(u, spec);
  for (std::size_t j = 0; j + 1 < spec.size(); ++j) spec[j] *= Complex(0.0, g.wavenumber(j));
  spec.back() = 0.0;
  ws.inverse(spec, out);
}

std::vector<double> spectral_derivative(const Grid& g, std::span<const double> u) {
  SpectralWorkspace ws(g);
  std::vector<double> out(g.size());
  spectral_derivative(ws, u, out);
  return out;
}

OracleValue oracle_pv(const std::function<double(double)>& u, double x, double cutoff,
                      int quad_points, std::optional<FarFieldLimits> limits) {
  if (!(cutoff > first_panel)) throw std::invalid_argument("oracle_pv: cutoff too small");
  const QuadratureRule rule = gauss_legendre(quad_points);
  const double ux = u(x);
  double sup = std::abs(ux);
  auto eval = [&](double at) {
    const double v = u(at);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "oracle_pv: non-finite function value at x = " << at;
      throw std::domain_error(os.str());
    }
    sup = std::max(sup, std::abs(v));
    return v;
  };
  if (!std::isfinite(ux)) throw std::domain_error("oracle_pv: non-finite function value");

  double integral = 0.0;
  double a = 0.0, b = first_panel;
  while (a < cutoff) {
    b = std::min(b, cutoff);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double y = mid + half * rule.nodes[q];
      const double second = eval(x + y) - 2.0 * ux + eval(x - y);
      integral += half * rule.weights[q] * second / (y * y);
    }
    a = b;
    b = 2.0 * b;
  }
  OracleValue out;
  out.value = -integral / std::numbers::pi;
  if (limits) {
    out.value -= (limits->plus_infinity + limits->minus_infinity - 2.0 * ux) /
                 (std::numbers::pi * cutoff);
  }
  out.tail_bound = 4.0 / std::numbers::pi * sup / cutoff;
  return out;
}

}  // namespace pnwave
