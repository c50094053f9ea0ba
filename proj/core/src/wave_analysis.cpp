#include "pnwave/wave_analysis.hpp"

#include "pnwave/halflap.hpp"
#include "pnwave/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pnwave {

namespace {

constexpr double window_lo = 1e-6;
constexpr double window_hi = 1e-2;
constexpr double admissible_lo = 1e-8;
constexpr double admissible_hi = 1e-1;

double interior_sup_distance(const Grid& g, std::span<const double> a, std::span<const double> b) {
  const double half = g.half_length() / 2.0;
  double m = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (std::abs(g.point(j)) <= half) m = std::max(m, std::abs(a[j] - b[j]));
  }
  return m;
}

// Exact integral of the piecewise linear interpolant of f over [a, b].
double integrate_linear(const Grid& g, std::span<const double> f, double a, double b) {
  const double h = g.spacing();
  const double x0 = g.point(0);
  const double last = g.point(g.size() - 1);
  if (a < x0 || b > last || a > b) {
    throw std::invalid_argument("truncated integral window leaves the grid");
  }
  auto interp = [&](double x) {
    const double s = (x - x0) / h;
    auto j = static_cast<std::size_t>(std::floor(s));
    j = std::min(j, g.size() - 2);
    const double frac = s - static_cast<double>(j);
    return f[j] + frac * (f[j + 1] - f[j]);
  };
  const auto ja = static_cast<std::size_t>(std::ceil((a - x0) / h));
  const auto jb = static_cast<std::size_t>(std::floor((b - x0) / h));
  if (ja > jb) return 0.5 * (interp(a) + interp(b)) * (b - a);
  double sum = 0.5 * (interp(a) + f[ja]) * (g.point(ja) - a);
  for (std::size_t j = ja; j < jb; ++j) sum += 0.5 * h * (f[j] + f[j + 1]);
  sum += 0.5 * (f[jb] + interp(b)) * (b - g.point(jb));
  return sum;
}

}  // namespace

TravelingWave make_traveling_wave(const WaveState& s, double c) {
  TravelingWave w{s.grid, s.ref, s.v, s.u(), c, 0.0, std::nullopt, std::nullopt};
  const double level = 0.5 * (s.ref.eta_l() + s.ref.eta_r());
  const auto xi = front_position(s.grid, w.eta, level);
  if (!xi) throw std::domain_error("traveling wave has no midpoint crossing");
  w.xi = *xi;
  return w;
}

// ---------------------------------------------------------------------------
// WaveProfile

WaveProfile::WaveProfile(const TravelingWave& w)
    : wave_(w),
      v_(w.grid, w.v),
      v_lap_(w.grid, apply_spectral(w.grid, w.v)),
      left_edge_(w.grid.point(0)),
      right_edge_(w.grid.point(w.grid.size() - 1)) {
  const double el = w.ref.eta_l(), er = w.ref.eta_r();
  left_prefactor_ = w.tail_left ? w.tail_left->prefactor
                                : (w.eta.front() - el) * (w.xi - left_edge_);
  right_prefactor_ = w.tail_right ? w.tail_right->prefactor
                                  : (er - w.eta.back()) * (right_edge_ - w.xi);
}

bool WaveProfile::inside(double y) const noexcept { return y >= left_edge_ && y <= right_edge_; }

double WaveProfile::value(double y) const {
  if (inside(y)) return wave_.ref.value(y) + v_.value(y);
  if (y > right_edge_) return wave_.ref.eta_r() - right_prefactor_ / (y - wave_.xi);
  return wave_.ref.eta_l() + left_prefactor_ / (wave_.xi - y);
}

double WaveProfile::derivative(double y) const {
  if (inside(y)) return wave_.ref.derivative(y) + v_.derivative(y);
  const double d = y - wave_.xi;
  return (y > right_edge_ ? right_prefactor_ : left_prefactor_) / (d * d);
}

double WaveProfile::half_laplacian(double y) const {
  if (inside(y)) return wave_.ref.half_laplacian(y) + v_lap_.value(y);
  return wave_.ref.half_laplacian(y);
}

// ---------------------------------------------------------------------------
// Velocity estimators

double measure_velocity_tracking(std::span<const double> t, std::span<const double> front) {
  if (t.size() != front.size()) throw std::invalid_argument("tracking: length mismatch");
  if (t.empty()) throw std::invalid_argument("tracking: fewer than 10 samples");
  const double t_mid = t.front() + 0.5 * (t.back() - t.front());
  std::vector<double> ts, xs;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= t_mid && std::isfinite(front[i])) {
      ts.push_back(t[i]);
      xs.push_back(front[i]);
    }
  }
  if (ts.size() < 10) throw std::invalid_argument("tracking: fewer than 10 samples");
  return fit_line(ts, xs).slope;
}

double measure_velocity_tracking(const RunReport& report) {
  std::vector<double> t, x;
  for (const auto& r : report.records) {
    t.push_back(r.t);
    x.push_back(r.front);
  }
  return measure_velocity_tracking(t, x);
}

double velocity_identity_energy(const TravelingWave& w, const BistablePotential& p) {
  const Grid& g = w.grid;
  const std::vector<double> dv = spectral_derivative(g, w.v);
  double sum = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double d = w.ref.derivative(g.point(j)) + dv[j];
    sum += d * d;
  }
  const double denom = g.spacing() * sum;
  if (!(denom > 0.0)) throw std::domain_error("velocity identity: zero Dirichlet energy");
  return (p.F(p.eta_r()) - p.F(p.eta_l())) / denom;
}

std::vector<double> symmetric_truncated_integrals(const Grid& g, std::span<const double> f,
                                                  double center, std::span<const double> radii) {
  if (f.size() != g.size()) throw std::invalid_argument("truncated integrals: length mismatch");
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(integrate_linear(g, f, center - r, center + r));
  return out;
}

InverseRadiusFit extrapolate_inverse_radius(std::span<const double> radii,
                                            std::span<const double> values) {
  std::vector<double> inv(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) inv[i] = 1.0 / radii[i];
  const LineFit f = fit_line(inv, values);
  return {f.intercept, f.slope, f.r_squared};
}

IntegralIdentity velocity_identity_integral(const TravelingWave& w, const BistablePotential& p,
                                            std::span<const double> radii) {
  if (radii.size() < 2) throw std::invalid_argument("integral identity: need at least two radii");
  const double L = w.grid.half_length();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || radii[i] > L / 2.0) {
      throw std::invalid_argument("integral identity: radii must lie in (0, L/2]");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw std::invalid_argument("integral identity: radii must be increasing");
    }
  }
  std::vector<double> f(w.eta.size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = p.F1(w.eta[j]);
  IntegralIdentity out;
  out.radii.assign(radii.begin(), radii.end());
  out.values = symmetric_truncated_integrals(w.grid, f, w.xi, radii);
  const double jump = w.ref.eta_r() - w.ref.eta_l();
  for (double& v : out.values) v /= jump;
  out.fit = extrapolate_inverse_radius(out.radii, out.values);
  out.c = out.fit.limit;
  return out;
}

// ---------------------------------------------------------------------------
// Tails

TailFit fit_tail(const TravelingWave& w, const BistablePotential& p, Side side, double x_lo,
                 double x_hi) {
  if (!(x_lo >= 10.0) || !(x_hi > x_lo)) {
    throw std::invalid_argument("tail window must satisfy 10 <= x_lo < x_hi");
  }
  const Grid& g = w.grid;
  const double well = side == Side::right ? p.eta_r() : p.eta_l();
  std::vector<double> lx, ly;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double y = side == Side::right ? g.point(j) - w.xi : w.xi - g.point(j);
    if (y < x_lo || y > x_hi) continue;
    const double gap = std::abs(w.eta[j] - well);
    if (gap < 1e-12) throw std::domain_error("window too far: tail below 1e-12");
    lx.push_back(std::log(y));
    ly.push_back(std::log(gap));
  }
  const double reach = side == Side::right ? w.xi + x_hi : w.xi - x_hi;
  if (reach > g.point(g.size() - 1) || reach < g.point(0) || lx.size() < 2) {
    throw std::invalid_argument("tail window leaves the grid interior");
  }
  const LineFit f = fit_line(lx, ly);
  TailFit out;
  out.exponent = f.slope;
  out.prefactor = std::exp(f.intercept);
  out.r_squared = f.r_squared;
  out.expected_prefactor = std::abs(p.eta_l() - p.eta_r()) / (std::numbers::pi * p.F2(well));
  out.x_lo = x_lo;
  out.x_hi = x_hi;
  return out;
}

// ---------------------------------------------------------------------------
// Convergence rate

double RateFit::decades() const { return d_min > 0.0 ? std::log10(d_max / d_min) : 0.0; }

RateFit fit_convergence_rate(std::span<const double> t, std::span<const double> d) {
  if (t.size() != d.size()) throw std::invalid_argument("rate fit: length mismatch");
  const auto admissible = std::count_if(d.begin(), d.end(), [](double x) {
    return x >= admissible_lo && x <= admissible_hi;
  });
  if (admissible < 20) {
    throw std::domain_error("no exponential regime found: fewer than 20 samples with d in [1e-8, 1e-1]");
  }
  std::size_t best_begin = 0, best_len = 0;
  for (std::size_t i = 0; i < d.size();) {
    if (!(d[i] >= window_lo && d[i] <= window_hi)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < d.size() && d[j] >= window_lo && d[j] <= window_hi) ++j;
    if (j - i > best_len) {
      best_begin = i;
      best_len = j - i;
    }
    i = j;
  }
  if (best_len < 10) throw std::domain_error("no exponential regime found");
  std::vector<double> ts(t.begin() + best_begin, t.begin() + best_begin + best_len);
  std::vector<double> ld(best_len);
  for (std::size_t i = 0; i < best_len; ++i) ld[i] = std::log(d[best_begin + i]);
  const LineFit f = fit_line(ts, ld);
  if (!(f.slope < 0.0)) throw std::domain_error("no exponential regime found");
  RateFit out;
  out.kappa = -f.slope;
  out.K = std::exp(f.intercept);
  out.r_squared = f.r_squared;
  out.t_lo = ts.front();
  out.t_hi = ts.back();
  const auto [mn, mx] = std::minmax_element(d.begin() + best_begin, d.begin() + best_begin + best_len);
  out.d_min = *mn;
  out.d_max = *mx;
  out.points = best_len;
  return out;
}

// ---------------------------------------------------------------------------
// Shift-minimized distances

ShiftedProfile::ShiftedProfile(const TravelingWave& w)
    : wave_(w), ws_(w.grid), v_hat_(w.grid.spectrum_size()), work_(w.grid.spectrum_size()),
      v_shift_(w.grid.size()) {
  ws_.forward(wave_.v, v_hat_);
}

void ShiftedProfile::evaluate(double shift, std::span<double> out) {
  const Grid& g = wave_.grid;
  for (std::size_t j = 0; j < v_hat_.size(); ++j) {
    work_[j] = v_hat_[j] * std::polar(1.0, -g.wavenumber(j) * shift);
  }
  ws_.inverse(work_, v_shift_);
  const ReferenceProfile ref = wave_.ref.recentered(wave_.ref.center() + shift);
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = ref.value(g.point(j)) + v_shift_[j];
}

ShiftDistance shift_distance(ShiftedProfile& eta, const Grid& g, std::span<const double> u,
                             double guess, double bracket) {
  std::vector<double> buf(g.size());
  const auto objective = [&](double s) {
    eta.evaluate(s, buf);
    return interior_sup_distance(g, u, buf);
  };
  const auto m = minimize_scalar(objective, guess - bracket, guess + bracket);
  return {m.value, m.x};
}

DistanceSeries distance_series(const RunReport& report, const TravelingWave& w) {
  ShiftedProfile eta(w);
  DistanceSeries out;
  const double level = 0.5 * (w.ref.eta_l() + w.ref.eta_r());
  const double bracket = std::max(0.5, 4.0 * w.grid.spacing());
  for (const auto& snap : report.snapshots) {
    const auto front = front_position(w.grid, snap.u, level);
    const double guess = front ? *front - w.xi : 0.0;
    const auto sd = shift_distance(eta, w.grid, snap.u, guess, bracket);
    out.t.push_back(snap.t);
    out.d.push_back(sd.distance);
    out.shift.push_back(sd.shift);
  }
  return out;
}

PhaseFit fit_phase(const Grid& g, std::span<const double> u,
                   const std::function<double(double)>& profile, double guess, double bracket) {
  std::vector<double> buf(g.size());
  const auto objective = [&](double xi) {
    for (std::size_t j = 0; j < g.size(); ++j) buf[j] = profile(g.point(j) - xi);
    return interior_sup_distance(g, u, buf);
  };
  const auto m = minimize_scalar(objective, guess - bracket, guess + bracket);
  return {m.x, m.value};
}

}  // namespace pnwave
