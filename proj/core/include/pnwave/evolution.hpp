#pragma once

#include "pnwave/grid.hpp"
#include "pnwave/potential.hpp"
#include "pnwave/semigroup.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pnwave {

/// psi(x) = eta_l + (eta_r - eta_l) (1/2 + arctan(a (x - X0)) / pi).
///
/// Carries the far-field limits of u so that the periodic grid only has to
/// represent the decaying remainder v = u - psi. Its half-Laplacian is known
/// in closed form: (eta_r - eta_l) a^2 (x - X0) / (pi (1 + a^2 (x - X0)^2)).
class ReferenceProfile {
 public:
  /// With `verify`, the closed-form |d/dx| psi is checked against oracle_pv
  /// at five probe points (tolerance 1e-6 scaled by a (eta_r - eta_l)).
  ReferenceProfile(double eta_l, double eta_r, double center, double width, bool verify = true);

  double eta_l() const noexcept { return eta_l_; }
  double eta_r() const noexcept { return eta_r_; }
  double center() const noexcept { return center_; }
  double width() const noexcept { return width_; }

  double value(double x) const noexcept;
  double derivative(double x) const noexcept;
  double half_laplacian(double x) const noexcept;

  ReferenceProfile recentered(double new_center) const;

 private:
  double eta_l_, eta_r_, center_, width_;
};

/// Arctan width whose 1/x tails match the wells of `p`:
/// a = 2 / (1/F''(eta_l) + 1/F''(eta_r)).
double matched_reference_width(const BistablePotential& p);

/// u = psi + v on the grid at time t.
struct WaveState {
  double t = 0.0;
  Grid grid;
  ReferenceProfile ref;
  std::vector<double> v;

  std::vector<double> u() const;
  std::vector<double> psi() const;
};

struct EvolveConfig {
  double dt = 0.01;
  double t_end = 100.0;
  EtdOrder order = EtdOrder::second;
  /// Time between recentering checks; 0 disables recentering.
  double recenter_every = 0.0;
  /// Front offset |X - X0| that triggers a rebase; 0 means L/8.
  double recenter_threshold = 0.0;
  double record_every = 0.5;
  bool range_check = true;
  /// Store u at every record time (needed for convergence-rate fits).
  bool keep_snapshots = false;
};

/// Validates dt > 0, t_end > 0, record_every > 0 and the stability guard
/// dt <= 0.2 / sup|F''| on [eta_l - delta0, eta_r + delta0].
void check_config(const EvolveConfig& cfg, const BistablePotential& p);

enum class InitialKind { step, smoothed_step, perturbed_wave, custom };

std::string to_string(InitialKind k);
InitialKind initial_kind_from_string(const std::string& name);

struct InitialSpec {
  InitialKind kind = InitialKind::step;
  /// Width of the tanh ramp (smoothed-step) or of the perturbation bump.
  double width = 1.0;
  /// Perturbation amplitude for perturbed-wave, as a multiple of delta0.
  double amplitude = 0.5;
  /// Arctan width of the reference profile; 0 selects matched_reference_width.
  double ref_width = 0.0;
  /// Samples for InitialKind::custom.
  std::vector<double> samples;
  /// Overrides the automatically centered reference profile.
  std::optional<ReferenceProfile> ref;
};

class InitialDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds the t = 0 state. Initial data must lie in [eta_l - delta0,
/// eta_r + delta0] and its first/last 5% of samples within delta0 of
/// eta_l/eta_r (discrete version of the limsup/liminf conditions).
WaveState make_initial(const Grid& g, const BistablePotential& p, const InitialSpec& spec);

/// Checks the range and end-limit conditions on raw samples; throws InitialDataError.
void check_initial_samples(const Grid& g, const BistablePotential& p, std::span<const double> u0);

/// First upward crossing of the midpoint level (eta_l + eta_r)/2, linearly
/// interpolated. Returns nullopt if u never crosses.
std::optional<double> front_position(const Grid& g, std::span<const double> u, double level,
                                     int* crossings = nullptr);

struct RecordPoint {
  double t = 0.0;
  double front = 0.0;
  double residual = 0.0;
  double umin = 0.0;
  double umax = 0.0;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
};

struct RunReport {
  std::vector<RecordPoint> records;
  std::vector<Snapshot> snapshots;
  int recenterings = 0;
  int max_crossings = 1;
  std::vector<std::string> notes;
};

class EvolutionError : public std::runtime_error {
 public:
  EvolutionError(const std::string& what, double last_finite_time)
      : std::runtime_error(what), last_finite_time_(last_finite_time) {}
  double last_finite_time() const noexcept { return last_finite_time_; }

 private:
  double last_finite_time_;
};

/// Steps u = psi + v under du/dt + |d/dx| u = -F'(u), i.e.
/// dv/dt = -|d/dx| v - F'(psi + v) - |d/dx| psi, with |d/dx| psi closed form.
class Evolver {
 public:
  Evolver(WaveState s0, BistablePotential p, EvolveConfig cfg);

  const WaveState& state() const noexcept { return state_; }
  const BistablePotential& potential() const noexcept { return potential_; }
  const EvolveConfig& config() const noexcept { return cfg_; }

  void step();
  /// Steps until t reaches `t_target` (rounded to whole steps).
  void advance_to(double t_target);
  /// Rebases psi at `new_center`, keeping u unchanged.
  void recenter(double new_center);

  /// [eta_l - delta0 - 1e-8, eta_r + delta0 + 1e-8] check of the current u.
  bool in_range() const;

 private:
  void refresh_reference();

  BistablePotential potential_;
  EvolveConfig cfg_;
  WaveState state_;
  EtdStepper stepper_;
  std::vector<double> psi_, psi_half_lap_;
  long long steps_ = 0;
  double t0_ = 0.0;
};

/// One step of size cfg.dt.
WaveState step(const WaveState& s, const BistablePotential& p, const EvolveConfig& cfg);

struct EvolveResult {
  RunReport report;
  WaveState final_state;
};

/// Time loop to cfg.t_end with recording every cfg.record_every. Throws
/// EvolutionError if the front comes within L/10 of the boundary while
/// recentering is disabled, on blow-up, or on a range violation when
/// range_check is set and the initial data were admissible.
EvolveResult evolve(const WaveState& s0, const BistablePotential& p, const EvolveConfig& cfg);

struct WeertmanResidual {
  double value = 0.0;
  bool monotone = true;
};

/// sup_{|x| <= L/2} |-|d/dx| eta + c eta' - F'(eta)| for eta = psi + v.
WeertmanResidual weertman_residual(const Grid& g, const BistablePotential& p,
                                   const ReferenceProfile& ref, std::span<const double> v,
                                   double c);

}  // namespace pnwave
