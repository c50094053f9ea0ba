#include "pnwave_app/acceptance.hpp"

#include <pnwave/halflap.hpp>
#include <pnwave/numerics.hpp>
#include <pnwave/semigroup.hpp>
#include <pnwave/squeeze.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include "pnwave_app/experiments.hpp"
#include "pnwave_app/pipeline.hpp"

namespace pnwave::app {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

struct Outcome {
  bool passed = true;
  std::vector<std::string> parts;

  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    parts.push_back(what + (ok ? "" : " [x]"));
  }
  std::string text() const {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "; " : "") + parts[i];
    return s;
  }
};

RunConfig base_config() {
  RunConfig cfg;
  cfg.potential = "sinusoidal";
  cfg.A = 1.0;
  cfg.L = 200.0;
  cfg.N = 8192;
  cfg.dt = 0.01;
  cfg.t_end = 100.0;
  cfg.record_every = 0.25;
  return cfg;
}

RunConfig tilted_config() {
  RunConfig cfg = base_config();
  cfg.drive = 0.01;
  // front drifts; keep the far field aligned with it
  cfg.recenter_every = 0.5;
  cfg.recenter_threshold = 0.2;
  return cfg;
}

RunConfig quartic_config() {
  RunConfig cfg = base_config();
  cfg.potential = "quartic";
  return cfg;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

class Runs {
 public:
  const WaveRun& get(const std::string& key, const std::function<RunConfig()>& make) {
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, std::make_unique<WaveRun>(run_wave(make()))).first;
    }
    return *it->second;
  }
  const WaveRun& sinusoidal() { return get("sin", base_config); }
  const WaveRun& sinusoidal_half_dt() {
    return get("sin-half", [] {
      RunConfig c = base_config();
      c.dt = 0.005;
      c.t_end = 60.0;
      return c;
    });
  }
  const WaveRun& tilted() { return get("tilted", tilted_config); }
  const WaveRun& quartic() { return get("quartic", quartic_config); }

 private:
  std::map<std::string, std::unique_ptr<WaveRun>> cache_;
};

// 1
Outcome operator_oracle() {
  Outcome o;
  const Grid g = make_grid(200.0, 8192);
  const double tol = std::max(1e-6, 5.0 / g.half_length());
  for (double a : {1.0, 2.0, 0.5}) {
    const auto profile = [a](double x) { return a / (kPi * (1.0 + a * a * x * x)); };
    std::vector<double> u(g.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = profile(g.point(j));
    const auto spec = apply_spectral(g, u);
    double err = 0.0;
    for (std::size_t j = g.size() / 4; j <= 3 * g.size() / 4; j += 64) {
      const auto ov = oracle_pv(profile, g.point(j), 1e4, 24, FarFieldLimits{});
      err = std::max(err, std::abs(spec[j] - ov.value));
    }
    o.check(err <= tol, (a == 1.0 ? std::string("P1") : "psi' a=" + fmt(a)) +
                            " max_err=" + fmt(err) + " tol=" + fmt(tol));
  }
  return o;
}

// 2
Outcome analytic_regression(Runs& runs) {
  Outcome o;
  const WaveRun& r = runs.sinusoidal();
  const WaveState& s = r.result.final_state;
  const std::vector<double> u = s.u();
  const double A = r.potential.amplitude();
  const auto exact = [A](double x) { return 0.5 + std::atan(A * x) / kPi; };
  const auto front = front_position(s.grid, u, 0.5);
  const PhaseFit pf = fit_phase(s.grid, u, exact, front.value_or(0.0), 1.0);
  o.check(pf.distance <= 2e-3, "dist=" + fmt(pf.distance) + " (<=2e-3)");
  const WeertmanResidual wr = weertman_residual(s.grid, r.potential, s.ref, s.v, r.wave.c);
  o.check(wr.value <= 5e-4, "weertman=" + fmt(wr.value) + " (<=5e-4)");
  return o;
}

// 3
Outcome velocity_identities(Runs& runs) {
  Outcome o;
  const RunConfig cfg = base_config();
  const auto radii = cfg.idc2_radii();
  {
    const WaveRun& r = runs.sinusoidal();
    const double c1 = r.wave.c;
    const double c2 = velocity_identity_energy(r.wave, r.potential);
    const double c3 = velocity_identity_integral(r.wave, r.potential, radii).c;
    const double worst = std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
    o.check(worst <= 1e-3, "balanced max|c|=" + fmt(worst));
  }
  const WaveRun& r = runs.tilted();
  const double c[3] = {r.wave.c, velocity_identity_energy(r.wave, r.potential),
                       velocity_identity_integral(r.wave, r.potential, radii).c};
  double rel = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int k = i + 1; k < 3; ++k) {
      rel = std::max(rel, std::abs(c[i] - c[k]) / std::max(std::abs(c[i]), std::abs(c[k])));
    }
  }
  const BistablePotential& p = r.potential;
  const double dF = p.F(p.eta_r()) - p.F(p.eta_l());
  const bool sign_ok = std::all_of(std::begin(c), std::end(c), [dF](double v) {
    return v != 0.0 && std::signbit(v) == std::signbit(dF);
  });
  o.check(rel <= 0.02, "tilted c=" + fmt(c[0]) + "/" + fmt(c[1]) + "/" + fmt(c[2]) +
                           " rel=" + fmt(rel));
  o.check(sign_ok, "sign(F(r)-F(l))=" + std::string(dF < 0 ? "-" : "+"));
  return o;
}

// 4
Outcome tail_asymptotics(Runs& runs) {
  Outcome o;
  {
    const WaveRun& r = runs.sinusoidal();
    for (Side side : {Side::right, Side::left}) {
      const TailFit t = fit_tail(r.wave, r.potential, side, 20.0, 80.0);
      const double rel = std::abs(t.prefactor - t.expected_prefactor) / t.expected_prefactor;
      o.check(std::abs(t.exponent + 1.0) <= 0.05 && rel <= 0.10,
              std::string(side == Side::right ? "sin right" : "sin left") +
                  " exp=" + fmt(t.exponent) + " pref=" + fmt(t.prefactor) + "/" +
                  fmt(t.expected_prefactor));
    }
  }
  const WaveRun& r = runs.quartic();
  for (Side side : {Side::right, Side::left}) {
    const TailFit t = fit_tail(r.wave, r.potential, side, 20.0, 80.0);
    o.check(std::abs(t.exponent + 1.0) <= 0.1,
            std::string(side == Side::right ? "quartic right" : "quartic left") +
                " exp=" + fmt(t.exponent));
  }
  return o;
}

// 5
Outcome exponential_convergence(Runs& runs) {
  Outcome o;
  const WaveRun& r = runs.sinusoidal();
  const RateFit f = fit_convergence_rate(r.distances.t, r.distances.d);
  o.check(f.kappa > 0.0 && f.r_squared >= 0.99 && f.decades() >= 3.0,
          "kappa=" + fmt(f.kappa) + " R2=" + fmt(f.r_squared) + " decades=" + fmt(f.decades()));
  const WaveRun& h = runs.sinusoidal_half_dt();
  const RateFit fh = fit_convergence_rate(h.distances.t, h.distances.d);
  const double rel = std::abs(fh.kappa - f.kappa) / f.kappa;
  o.check(rel <= 0.10, "kappa(dt/2)=" + fmt(fh.kappa) + " rel=" + fmt(rel));
  return o;
}

// 6
Outcome comparison_principle(std::uint64_t seed) {
  Outcome o;
  const BistablePotential p = make_sinusoidal(1.0);
  const Grid g = make_grid(200.0, 8192);
  Rng rng(seed);
  EvolveConfig ec;
  ec.dt = 0.01;
  ec.t_end = 20.0;
  ec.record_every = 1.0;
  const std::vector<double> times{0.5, 1.0, 5.0, 20.0};
  double min_gap = INFINITY, strict = INFINITY;
  int ordered = 0, strict_checked = 0, strict_ok = 0;
  for (int k = 0; k < 10; ++k) {
    const auto [lo, hi] = random_ordered_pair(g, p, rng);
    const ComparisonReport cr = verify_comparison(p, g, lo, hi, ec, times);
    min_gap = std::min(min_gap, cr.min_gap);
    ordered += cr.ordered ? 1 : 0;
    if (cr.strict_checked) {
      ++strict_checked;
      strict_ok += cr.strict_ok ? 1 : 0;
      strict = std::min(strict, cr.strict_gap_min);
    }
  }
  o.check(ordered == 10, "ordered " + std::to_string(ordered) + "/10 min_gap=" + fmt(min_gap));
  o.check(strict_ok == strict_checked && strict_checked > 0,
          "strict " + std::to_string(strict_ok) + "/" + std::to_string(strict_checked) +
              " min=" + fmt(strict));
  return o;
}

// 7
Outcome range_preservation(std::uint64_t seed) {
  Outcome o;
  const BistablePotential p = make_sinusoidal(1.0);
  const Grid g = make_grid(200.0, 8192);
  Rng rng(seed + 1);
  EvolveConfig ec;
  ec.dt = 0.01;
  ec.t_end = 50.0;
  ec.record_every = 0.5;
  ec.range_check = false;
  const double lo = p.eta_l() - p.delta0() - 1e-8;
  const double hi = p.eta_r() + p.delta0() + 1e-8;
  double worst_lo = INFINITY, worst_hi = -INFINITY;
  int kept = 0;
  for (int k = 0; k < 20; ++k) {
    InitialSpec spec;
    spec.kind = InitialKind::custom;
    spec.samples = random_initial_data(g, p, rng);
    const EvolveResult res = evolve(make_initial(g, p, spec), p, ec);
    bool ok = true;
    for (const auto& rec : res.report.records) {
      worst_lo = std::min(worst_lo, rec.umin);
      worst_hi = std::max(worst_hi, rec.umax);
      ok = ok && rec.umin >= lo && rec.umax <= hi;
    }
    kept += ok ? 1 : 0;
  }
  o.check(kept == 20, "kept " + std::to_string(kept) + "/20 range=[" + fmt(worst_lo) + ", " +
                          fmt(worst_hi) + "]");
  return o;
}

// 8
Outcome subsuper(Runs& runs) {
  Outcome o;
  const WaveRun& r = runs.sinusoidal();
  const SqueezeParams sp =
      compute_squeeze_params(r.potential, r.wave, 0.05, 0.02, 0.0, SigmaRule::sufficient);
  const auto times = linspace(0.0, 12.0, 25);
  const auto points = linspace(r.wave.xi - 30.0, r.wave.xi + 30.0, 64);
  const SubSuperReport rep = verify_subsuper_residual(r.potential, r.wave, sp, times, points);
  const double worst = std::min(rep.min_super, rep.min_sub);
  o.check(worst >= -5e-3, "sigma=" + fmt(sp.sigma) + " min residual=" + fmt(worst) +
                              " over " + std::to_string(rep.samples));

  EvolveConfig ec;
  ec.dt = 0.01;
  ec.t_end = 20.0;
  ec.record_every = 1.0;
  std::vector<double> u0(r.wave.grid.size());
  for (std::size_t j = 0; j < u0.size(); ++j) {
    const double x = r.wave.grid.point(j);
    const double z = (x - r.wave.xi) / 20.0;
    u0[j] = r.wave.eta[j] + 0.5 * sp.delta * std::sin(x / 3.0) * std::exp(-z * z);
  }
  const std::vector<double> st{0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  const SandwichReport sw = verify_sandwich(r.potential, r.wave, sp, u0, ec, st);
  o.check(sw.passed, "sandwich margins " + fmt(sw.lower_margin) + "/" + fmt(sw.upper_margin));
  return o;
}

// 9
Outcome kernel_facts(std::uint64_t seed) {
  Outcome o;
  {
    // continuous kernel sampled on a wide fine grid
    const Grid g = make_grid(2000.0, 40000);
    double mass = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) mass += g.spacing() * kernel_value(1.0, g.point(j));
    // kernel of the discrete propagator
    const Grid d = make_grid(200.0, 8192);
    std::vector<double> delta(d.size(), 0.0);
    delta[d.size() / 2] = 1.0 / d.spacing();
    const auto kd = propagate(d, 1.0, delta);
    double dmass = 0.0;
    for (double v : kd) dmass += d.spacing() * v;
    o.check(std::abs(mass - 1.0) <= 1e-3 && std::abs(dmass - 1.0) <= 1e-3,
            "mass=" + fmt(mass) + " discrete=" + fmt(dmass));
  }
  {
    const Grid g = make_grid(200.0, 8192);
    Rng rng(seed + 2);
    std::vector<double> u = random_initial_data(g, make_sinusoidal(1.0), rng);
    double err = 0.0;
    for (auto [s, t] : {std::pair{0.3, 0.7}, std::pair{1.0, 2.5}, std::pair{0.01, 5.0}}) {
      const auto a = propagate(g, t, propagate(g, s, u));
      const auto b = propagate(g, s + t, u);
      for (std::size_t j = 0; j < a.size(); ++j) err = std::max(err, std::abs(a[j] - b[j]));
    }
    o.check(err <= 1e-12, "composition err=" + fmt(err));
  }
  {
    const QuadratureRule q = gauss_legendre(24);
    double worst = 0.0;
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const auto dk = [t](double x) { return 2.0 * t * x / (kPi * std::pow(t * t + x * x, 2)); };
      double sum = 0.0, a = 0.0, b = t / 16.0;
      const double R = 1e6 * t;
      while (a < R) {
        for (std::size_t i = 0; i < q.nodes.size(); ++i) {
          sum += 0.5 * (b - a) * q.weights[i] * dk(0.5 * (b - a) * q.nodes[i] + 0.5 * (a + b));
        }
        a = b;
        b *= 2.0;
      }
      const double l1 = 2.0 * (sum + t / (kPi * a * a));
      worst = std::max(worst, std::abs(l1 - kernel_derivative_l1(t)));
    }
    o.check(worst <= 1e-6, "dK L1 err=" + fmt(worst));
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 10
Outcome determinism(const fs::path& scratch, std::uint64_t seed) {
  Outcome o;
  RunConfig cfg = base_config();
  cfg.squeeze = true;
  cfg.c_abs_max = 1e-3;
  cfg.seed = seed;
  const fs::path a = scratch / "run_a", b = scratch / "run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  run_pipeline(cfg, a);
  run_pipeline(cfg, b);
  int files = 0, same = 0;
  std::vector<fs::path> names;
  for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename());
  std::sort(names.begin(), names.end());
  std::string differing;
  for (const auto& n : names) {
    ++files;
    if (fs::exists(b / n) && slurp(a / n) == slurp(b / n)) {
      ++same;
    } else {
      differing += " " + n.string();
    }
  }
  o.check(files > 0 && same == files,
          std::to_string(same) + "/" + std::to_string(files) + " files identical" + differing);
  return o;
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << r.id << ". " << r.name << ": " << r.detail
     << " (" << fmt(r.seconds) << " s)";
  return os.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  Runs runs;
  const fs::path scratch =
      opt.scratch.empty() ? fs::temp_directory_path() / "pnwave-acceptance" : opt.scratch;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"operator oracle equivalence", [] { return operator_oracle(); }},
      {"analytic wave regression", [&] { return analytic_regression(runs); }},
      {"velocity identities", [&] { return velocity_identities(runs); }},
      {"tail asymptotics", [&] { return tail_asymptotics(runs); }},
      {"exponential convergence", [&] { return exponential_convergence(runs); }},
      {"comparison principle", [&] { return comparison_principle(opt.seed); }},
      {"range preservation", [&] { return range_preservation(opt.seed); }},
      {"sub/super-solution residuals", [&] { return subsuper(runs); }},
      {"kernel facts", [&] { return kernel_facts(opt.seed); }},
      {"determinism", [&] { return determinism(scratch, opt.seed); }},
  };
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!opt.only.empty() && !opt.only.count(id)) continue;
    CriterionResult r;
    r.id = id;
    r.name = criteria[i].first;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = criteria[i].second();
      r.passed = o.passed;
      r.detail = o.text();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (opt.log) *opt.log << format_result(r) << std::endl;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pnwave::app
