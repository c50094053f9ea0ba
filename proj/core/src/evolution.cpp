#include "pnwave/evolution.hpp"

#include "pnwave/halflap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pnwave {

namespace {

constexpr double range_tol = 1e-8;
constexpr double end_fraction = 0.05;

std::string format_time(double t) {
  std::ostringstream os;
  os.precision(6);
  os << t;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// ReferenceProfile

ReferenceProfile::ReferenceProfile(double eta_l, double eta_r, double center, double width,
                                   bool verify)
    : eta_l_(eta_l), eta_r_(eta_r), center_(center), width_(width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("reference profile width must be positive");
  }
  if (!(eta_l <= eta_r) || !std::isfinite(center)) {
    throw std::invalid_argument("reference profile requires eta_l <= eta_r and a finite center");
  }
  if (!verify) return;
  const double tol = 1e-6 * std::max(1.0, width * (eta_r - eta_l));
  const auto f = [this](double x) { return value(x); };
  for (int probe = -2; probe <= 2; ++probe) {
    const double x = center + static_cast<double>(probe) / width;
    const auto ref = oracle_pv(f, x, 1e4 / width, 24, FarFieldLimits{eta_l, eta_r});
    if (std::abs(ref.value - half_laplacian(x)) > tol) {
      std::ostringstream os;
      os << "reference profile: closed-form |d/dx| psi disagrees with quadrature at x = " << x
         << " (" << half_laplacian(x) << " vs " << ref.value << ")";
      throw std::logic_error(os.str());
    }
  }
}

double ReferenceProfile::value(double x) const noexcept {
  return eta_l_ + (eta_r_ - eta_l_) * (0.5 + std::atan(width_ * (x - center_)) / std::numbers::pi);
}

double ReferenceProfile::derivative(double x) const noexcept {
  const double z = width_ * (x - center_);
  return (eta_r_ - eta_l_) * width_ / (std::numbers::pi * (1.0 + z * z));
}

double ReferenceProfile::half_laplacian(double x) const noexcept {
  const double z = width_ * (x - center_);
  return (eta_r_ - eta_l_) * width_ * z / (std::numbers::pi * (1.0 + z * z));
}

ReferenceProfile ReferenceProfile::recentered(double new_center) const {
  return ReferenceProfile(eta_l_, eta_r_, new_center, width_, false);
}

double matched_reference_width(const BistablePotential& p) {
  const double l = p.F2(p.eta_l()), r = p.F2(p.eta_r());
  if (!(l > 0.0 && r > 0.0)) throw std::domain_error("wells must have positive curvature");
  return 2.0 / (1.0 / l + 1.0 / r);
}

std::vector<double> WaveState::psi() const {
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = ref.value(grid.point(j));
  return out;
}

std::vector<double> WaveState::u() const {
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = ref.value(grid.point(j)) + v[j];
  return out;
}

// ---------------------------------------------------------------------------
// Configuration and initial data

void check_config(const EvolveConfig& cfg, const BistablePotential& p) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw std::invalid_argument("dt must be positive");
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (!(cfg.record_every > 0.0)) throw std::invalid_argument("record_every must be positive");
  if (cfg.recenter_every < 0.0) throw std::invalid_argument("recenter_every must be >= 0");
  if (cfg.recenter_threshold < 0.0) throw std::invalid_argument("recenter_threshold must be >= 0");
  const double limit = 0.2 / p.f2_sup();
  if (cfg.dt > limit) {
    std::ostringstream os;
    os << "dt = " << cfg.dt << " exceeds the stability guard 0.2/sup|F''| = " << limit;
    throw std::invalid_argument(os.str());
  }
}

std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::step: return "step";
    case InitialKind::smoothed_step: return "smoothed-step";
    case InitialKind::perturbed_wave: return "perturbed-wave";
    case InitialKind::custom: return "custom";
  }
  return "unknown";
}

InitialKind initial_kind_from_string(const std::string& name) {
  if (name == "step") return InitialKind::step;
  if (name == "smoothed-step") return InitialKind::smoothed_step;
  if (name == "perturbed-wave") return InitialKind::perturbed_wave;
  if (name == "custom") return InitialKind::custom;
  throw std::invalid_argument("unknown initial condition kind '" + name + "'");
}

void check_initial_samples(const Grid& g, const BistablePotential& p, std::span<const double> u0) {
  if (u0.size() != g.size()) throw InitialDataError("initial data: length mismatch");
  const double lo = p.eta_l() - p.delta0(), hi = p.eta_r() + p.delta0();
  for (std::size_t j = 0; j < u0.size(); ++j) {
    if (!(u0[j] >= lo - 1e-12 && u0[j] <= hi + 1e-12)) {
      std::ostringstream os;
      os << "initial range violation: u0(" << g.point(j) << ") = " << u0[j]
         << " outside [eta_l - delta0, eta_r + delta0] = [" << lo << ", " << hi
         << "] (range hypothesis of the convergence theorem)";
      throw InitialDataError(os.str());
    }
  }
  const auto n_end = std::max<std::size_t>(1, static_cast<std::size_t>(end_fraction * u0.size()));
  for (std::size_t j = 0; j < n_end; ++j) {
    if (!(u0[j] < p.eta_l() + p.delta0())) {
      std::ostringstream os;
      os << "initial limit violation: u0(" << g.point(j) << ") = " << u0[j]
         << " is not within delta0 of eta_l on the left end (limsup condition)";
      throw InitialDataError(os.str());
    }
    const std::size_t r = u0.size() - 1 - j;
    if (!(u0[r] > p.eta_r() - p.delta0())) {
      std::ostringstream os;
      os << "initial limit violation: u0(" << g.point(r) << ") = " << u0[r]
         << " is not within delta0 of eta_r on the right end (liminf condition)";
      throw InitialDataError(os.str());
    }
  }
}

WaveState make_initial(const Grid& g, const BistablePotential& p, const InitialSpec& spec) {
  const double el = p.eta_l(), er = p.eta_r(), jump = er - el;
  const double width = spec.ref_width > 0.0 ? spec.ref_width : matched_reference_width(p);
  std::vector<double> u0(g.size());
  switch (spec.kind) {
    case InitialKind::step:
      for (std::size_t j = 0; j < u0.size(); ++j) u0[j] = g.point(j) < 0.0 ? el : er;
      break;
    case InitialKind::smoothed_step:
      if (!(spec.width > 0.0)) throw InitialDataError("smoothed-step width must be positive");
      for (std::size_t j = 0; j < u0.size(); ++j) {
        u0[j] = el + 0.5 * jump * (1.0 + std::tanh(g.point(j) / spec.width));
      }
      break;
    case InitialKind::perturbed_wave: {
      if (!(spec.width > 0.0)) throw InitialDataError("perturbation width must be positive");
      const ReferenceProfile shape(el, er, 0.0, width, false);
      const double lo = el - p.delta0(), hi = er + p.delta0();
      for (std::size_t j = 0; j < u0.size(); ++j) {
        const double x = g.point(j);
        const double bump = spec.amplitude * p.delta0() * std::exp(-x * x / (spec.width * spec.width));
        u0[j] = std::clamp(shape.value(x) + bump, lo, hi);
      }
      break;
    }
    case InitialKind::custom:
      u0 = spec.samples;
      break;
  }
  check_initial_samples(g, p, u0);

  ReferenceProfile ref = [&] {
    if (spec.ref) return *spec.ref;
    const double center = front_position(g, u0, 0.5 * (el + er)).value_or(0.0);
    return ReferenceProfile(el, er, center, width);
  }();
  WaveState s{0.0, g, ref, std::vector<double>(g.size())};
  for (std::size_t j = 0; j < u0.size(); ++j) s.v[j] = u0[j] - ref.value(g.point(j));
  return s;
}

std::optional<double> front_position(const Grid& g, std::span<const double> u, double level,
                                     int* crossings) {
  std::optional<double> first;
  int count = 0;
  for (std::size_t j = 1; j < u.size(); ++j) {
    if (u[j - 1] < level && u[j] >= level) {
      ++count;
      if (!first) {
        const double frac = (level - u[j - 1]) / (u[j] - u[j - 1]);
        first = g.point(j - 1) + frac * g.spacing();
      }
    }
  }
  if (crossings) *crossings = count;
  return first;
}

// ---------------------------------------------------------------------------
// Time stepping

Evolver::Evolver(WaveState s0, BistablePotential p, EvolveConfig cfg)
    : potential_(std::move(p)),
      cfg_(cfg),
      state_(std::move(s0)),
      stepper_(state_.grid, cfg.dt, cfg.order),
      t0_(state_.t) {
  check_config(cfg_, potential_);
  if (state_.v.size() != state_.grid.size()) throw std::invalid_argument("state length mismatch");
  refresh_reference();
}

void Evolver::refresh_reference() {
  const Grid& g = state_.grid;
  psi_.resize(g.size());
  psi_half_lap_.resize(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    psi_[j] = state_.ref.value(g.point(j));
    psi_half_lap_[j] = state_.ref.half_laplacian(g.point(j));
  }
}

void Evolver::step() {
  const auto forcing = [this](std::span<const double> v, std::span<double> out) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      out[j] = -potential_.F1(psi_[j] + v[j]) - psi_half_lap_[j];
    }
  };
  try {
    stepper_.step(state_.v, forcing);
  } catch (const NonFiniteError& e) {
    throw EvolutionError(std::string("blow-up: ") + e.what() + " after t = " +
                             format_time(state_.t),
                         state_.t);
  }
  ++steps_;
  state_.t = t0_ + static_cast<double>(steps_) * cfg_.dt;
}

void Evolver::advance_to(double t_target) {
  const auto target = static_cast<long long>(std::llround((t_target - t0_) / cfg_.dt));
  while (steps_ < target) step();
}

void Evolver::recenter(double new_center) {
  const Grid& g = state_.grid;
  const ReferenceProfile next = state_.ref.recentered(new_center);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.point(j);
    state_.v[j] += state_.ref.value(x) - next.value(x);
  }
  state_.ref = next;
  refresh_reference();
}

bool Evolver::in_range() const {
  const double lo = potential_.eta_l() - potential_.delta0() - range_tol;
  const double hi = potential_.eta_r() + potential_.delta0() + range_tol;
  for (std::size_t j = 0; j < psi_.size(); ++j) {
    const double u = psi_[j] + state_.v[j];
    if (!(u >= lo && u <= hi)) return false;
  }
  return true;
}

WaveState step(const WaveState& s, const BistablePotential& p, const EvolveConfig& cfg) {
  Evolver ev(s, p, cfg);
  ev.step();
  return ev.state();
}

EvolveResult evolve(const WaveState& s0, const BistablePotential& p, const EvolveConfig& cfg) {
  Evolver ev(s0, p, cfg);
  const Grid& g = s0.grid;
  const double L = g.half_length();
  const double level = 0.5 * (p.eta_l() + p.eta_r());
  const double threshold = cfg.recenter_threshold > 0.0 ? cfg.recenter_threshold : L / 8.0;
  const bool recentering = cfg.recenter_every > 0.0;
  const bool check_range = cfg.range_check && ev.in_range();

  const auto n_steps = static_cast<long long>(std::llround(cfg.t_end / cfg.dt));
  const auto record_stride = std::max<long long>(1, std::llround(cfg.record_every / cfg.dt));
  const auto recenter_stride =
      recentering ? std::max<long long>(1, std::llround(cfg.recenter_every / cfg.dt)) : 0;

  EvolveResult result{{}, s0};
  RunReport& report = result.report;
  std::vector<double> previous_v;

  auto record = [&](double residual) {
    const WaveState& s = ev.state();
    const std::vector<double> u = s.u();
    RecordPoint r;
    r.t = s.t;
    int crossings = 0;
    const auto front = front_position(g, u, level, &crossings);
    if (crossings > report.max_crossings) {
      report.max_crossings = crossings;
      report.notes.push_back("t = " + format_time(s.t) + ": " + std::to_string(crossings) +
                             " midpoint crossings, using the first");
    }
    r.front = front.value_or(std::numeric_limits<double>::quiet_NaN());
    if (!front) report.notes.push_back("t = " + format_time(s.t) + ": no midpoint crossing");
    r.residual = residual;
    const auto [mn, mx] = std::minmax_element(u.begin(), u.end());
    r.umin = *mn;
    r.umax = *mx;
    report.records.push_back(r);
    if (cfg.keep_snapshots) report.snapshots.push_back({s.t, u});
    return r;
  };

  record(std::numeric_limits<double>::quiet_NaN());
  for (long long n = 1; n <= n_steps; ++n) {
    const bool recording = n % record_stride == 0;
    if (recording) previous_v = ev.state().v;
    ev.step();
    if (check_range && !ev.in_range()) {
      throw EvolutionError("range violation at t = " + format_time(ev.state().t),
                           ev.state().t);
    }
    if (recording) {
      double residual = 0.0;
      for (std::size_t j = 0; j < previous_v.size(); ++j) {
        residual = std::max(residual, std::abs(ev.state().v[j] - previous_v[j]));
      }
      record(residual / cfg.dt);
    }
    if (!recentering) {
      const auto front = front_position(g, ev.state().u(), level);
      if (front && std::abs(*front) > L - L / 10.0) {
        throw EvolutionError("front left trusted region at t = " + format_time(ev.state().t),
                             ev.state().t);
      }
    }
    if (recentering && n % recenter_stride == 0) {
      const auto front = front_position(g, ev.state().u(), level);
      if (front && std::abs(*front - ev.state().ref.center()) > threshold) {
        ev.recenter(*front);
        ++report.recenterings;
      }
    }
  }
  result.final_state = ev.state();
  return result;
}

// ---------------------------------------------------------------------------
// Steady-state residual

WeertmanResidual weertman_residual(const Grid& g, const BistablePotential& p,
                                   const ReferenceProfile& ref, std::span<const double> v,
                                   double c) {
  if (v.size() != g.size()) throw std::invalid_argument("weertman_residual: length mismatch");
  SpectralWorkspace ws(g);
  std::vector<double> lap(g.size()), dv(g.size());
  apply_spectral(ws, v, lap);
  spectral_derivative(ws, v, dv);
  WeertmanResidual out;
  const double L = g.half_length();
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.point(j);
    const double eta = ref.value(x) + v[j];
    if (eta < prev - 1e-8) out.monotone = false;
    prev = eta;
    if (std::abs(x) > L / 2.0) continue;
    const double r = -(ref.half_laplacian(x) + lap[j]) + c * (ref.derivative(x) + dv[j]) - p.F1(eta);
    out.value = std::max(out.value, std::abs(r));
  }
  return out;
}

}  // namespace pnwave
