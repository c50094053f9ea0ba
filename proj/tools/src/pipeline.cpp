#include "pnwave_app/pipeline.hpp"

#include <pnwave/halflap.hpp>
#include <pnwave/squeeze.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pnwave_app/io.hpp"

namespace pnwave::app {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

template <typename Fn>
auto in_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

ordered_json number_or_null(double x) {
  return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

ordered_json tail_json(const TailFit& t) {
  return ordered_json::array({t.prefactor, t.exponent});
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace

WaveRun evolve_stage(const RunConfig& cfg, const fs::path& out) {
  return in_stage("evolve", [&] {
    fs::create_directories(out);
    write_json(out / "manifest.json", cfg.to_json());
    WaveRun run = run_wave(cfg);
    const WaveState& s = run.result.final_state;

    ordered_json state;
    state["t"] = s.t;
    state["ref_center"] = s.ref.center();
    state["ref_width"] = s.ref.width();
    state["eta_l"] = s.ref.eta_l();
    state["eta_r"] = s.ref.eta_r();
    state["recenterings"] = run.result.report.recenterings;
    state["max_crossings"] = run.result.report.max_crossings;
    state["notes"] = run.result.report.notes;
    write_json(out / "state.json", state);

    const std::vector<double> u = s.u();
    const std::vector<double> psi = s.psi();
    write_csv(out / "profiles.csv", {"x", "u", "v", "psi"},
              {s.grid.points(), u, s.v, psi});

    const auto& rec = run.result.report.records;
    std::vector<double> t(rec.size()), X(rec.size()), res(rec.size()), lo(rec.size()),
        hi(rec.size());
    for (std::size_t i = 0; i < rec.size(); ++i) {
      t[i] = rec[i].t;
      X[i] = rec[i].front;
      res[i] = rec[i].residual;
      lo[i] = rec[i].umin;
      hi[i] = rec[i].umax;
    }
    write_csv(out / "timeseries.csv", {"t", "X", "residual", "umin", "umax"},
              {t, X, res, lo, hi});
    write_csv(out / "distances.csv", {"t", "d", "shift"},
              {run.distances.t, run.distances.d, run.distances.shift});
    return run;
  });
}

TravelingWave load_wave(const RunConfig& cfg, const fs::path& dir) {
  const nlohmann::json state = read_json(dir / "state.json");
  const Grid g = cfg.grid();
  const CsvTable prof = read_csv(dir / "profiles.csv");
  const auto& v = prof.column("v");
  if (v.size() != g.size()) {
    throw std::runtime_error("profiles.csv has " + std::to_string(v.size()) +
                             " rows but the config grid has " + std::to_string(g.size()));
  }
  const ReferenceProfile ref(state.at("eta_l").get<double>(), state.at("eta_r").get<double>(),
                             state.at("ref_center").get<double>(),
                             state.at("ref_width").get<double>());
  WaveState s{state.at("t").get<double>(), g, ref, v};
  const CsvTable ts = read_csv(dir / "timeseries.csv");
  const double c = measure_velocity_tracking(ts.column("t"), ts.column("X"));
  return make_traveling_wave(s, c);
}

ordered_json analyze_stage(const RunConfig& cfg, const fs::path& dir) {
  return in_stage("analyze", [&] {
    const BistablePotential p = cfg.make_potential();
    const TravelingWave w = load_wave(cfg, dir);
    ordered_json r;
    r["c_tracking"] = w.c;
    r["c_idc1"] = velocity_identity_energy(w, p);
    const auto radii = cfg.idc2_radii();
    const IntegralIdentity idc2 = velocity_identity_integral(w, p, radii);
    r["c_idc2"] = idc2.c;
    const TailFit left = fit_tail(w, p, Side::left, cfg.tail_x_lo, cfg.tail_x_hi);
    const TailFit right = fit_tail(w, p, Side::right, cfg.tail_x_lo, cfg.tail_x_hi);
    r["tail_left"] = tail_json(left);
    r["tail_right"] = tail_json(right);

    const CsvTable dist = read_csv(dir / "distances.csv");
    std::optional<RateFit> rate;
    std::string rate_error;
    try {
      rate = fit_convergence_rate(dist.column("t"), dist.column("d"));
    } catch (const std::exception& e) {
      rate_error = e.what();
      if (cfg.rate_fit_required) throw;
    }
    r["K"] = rate ? ordered_json(rate->K) : ordered_json(nullptr);
    r["kappa"] = rate ? ordered_json(rate->kappa) : ordered_json(nullptr);
    r["r2"] = rate ? ordered_json(rate->r_squared) : ordered_json(nullptr);

    r["rate_decades"] = rate ? ordered_json(rate->decades()) : ordered_json(nullptr);
    r["rate_t_lo"] = rate ? ordered_json(rate->t_lo) : ordered_json(nullptr);
    r["rate_t_hi"] = rate ? ordered_json(rate->t_hi) : ordered_json(nullptr);
    if (!rate) r["rate_error"] = rate_error;
    r["idc2_slope"] = idc2.fit.slope;
    r["idc2_r2"] = idc2.fit.r_squared;
    r["tail_left_expected_prefactor"] = left.expected_prefactor;
    r["tail_right_expected_prefactor"] = right.expected_prefactor;
    r["tail_left_r2"] = left.r_squared;
    r["tail_right_r2"] = right.r_squared;
    const WeertmanResidual wr = weertman_residual(w.grid, p, w.ref, w.v, w.c);
    r["wave_residual"] = number_or_null(wr.value);
    r["wave_monotone"] = wr.monotone;
    r["xi"] = w.xi;
    r["t_final"] = read_json(dir / "state.json").at("t").get<double>();
    r["final_distance"] = dist.column("d").empty() ? ordered_json(nullptr)
                                                   : ordered_json(dist.column("d").back());

    if (cfg.c_abs_max > 0.0 && std::abs(w.c) > cfg.c_abs_max) {
      write_json(dir / "report.json", r);
      throw std::runtime_error("|c_tracking| = " + std::to_string(std::abs(w.c)) +
                               " exceeds c_abs_max");
    }
    write_json(dir / "report.json", r);
    return r;
  });
}

ordered_json squeeze_stage(const RunConfig& cfg, const fs::path& dir) {
  return in_stage("squeeze-test", [&] {
    const BistablePotential p = cfg.make_potential();
    const TravelingWave w = load_wave(cfg, dir);
    const SqueezeParams sp = compute_squeeze_params(p, w, cfg.squeeze_delta1, cfg.squeeze_delta,
                                                    cfg.squeeze_l, cfg.sigma());
    const auto times = linspace(0.0, cfg.squeeze_t_max, static_cast<std::size_t>(cfg.squeeze_times));
    const auto points = linspace(w.xi - cfg.squeeze_x_span, w.xi + cfg.squeeze_x_span,
                                 static_cast<std::size_t>(cfg.squeeze_points));
    const SubSuperReport res = verify_subsuper_residual(p, w, sp, times, points);
    const double worst_residual = std::min(res.min_super, res.min_sub);
    const bool residual_ok = worst_residual >= -cfg.squeeze_floor;

    EvolveConfig ec = cfg.evolve_config();
    ec.keep_snapshots = false;
    ec.recenter_every = 0.0;

    // perturbation of size delta/2 around the wave
    std::vector<double> u0(w.grid.size());
    for (std::size_t j = 0; j < u0.size(); ++j) {
      const double z = (w.grid.point(j) - w.xi) / 20.0;
      u0[j] = w.eta[j] + 0.5 * sp.delta * std::sin(w.grid.point(j) / 3.0) * std::exp(-z * z);
    }
    const std::vector<double> sandwich_times{0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    const SandwichReport sw = verify_sandwich(p, w, sp, u0, ec, sandwich_times);

    Rng rng(cfg.seed);
    const std::vector<double> cmp_times{0.5, 1.0, 5.0, 20.0};
    double cmp_min = std::numeric_limits<double>::infinity();
    double strict_min = std::numeric_limits<double>::infinity();
    bool cmp_ok = true;
    for (std::int64_t k = 0; k < cfg.comparison_pairs; ++k) {
      const auto [lo, hi] = random_ordered_pair(w.grid, p, rng);
      const ComparisonReport cr = verify_comparison(p, w.grid, lo, hi, ec, cmp_times);
      cmp_min = std::min(cmp_min, cr.min_gap);
      if (cr.strict_checked) strict_min = std::min(strict_min, cr.strict_gap_min);
      cmp_ok = cmp_ok && cr.passed;
    }

    ordered_json r;
    r["sigma_rule"] = cfg.sigma_rule;
    r["beta"] = sp.beta;
    r["sigma"] = sp.sigma;
    r["sigma_raw"] = sp.sigma_raw;
    r["sigma_capped"] = sp.sigma_capped;
    r["delta"] = sp.delta;
    r["delta1"] = sp.delta1;
    r["l"] = sp.l;
    r["R0"] = sp.R0;
    r["eta_prime_min"] = sp.eta_prime_min;
    r["f2_sup"] = sp.f2_sup;
    r["min_super"] = res.min_super;
    r["min_sub"] = res.min_sub;
    r["worst_t"] = res.worst.t;
    r["worst_x"] = res.worst.x;
    r["worst_i"] = res.worst.i;
    r["residual_floor"] = cfg.squeeze_floor;
    r["residual_passed"] = residual_ok;
    r["sandwich_lower_margin"] = sw.lower_margin;
    r["sandwich_upper_margin"] = sw.upper_margin;
    r["sandwich_initial_contained"] = sw.initial_contained;
    r["sandwich_passed"] = sw.passed;
    r["comparison_pairs"] = cfg.comparison_pairs;
    r["comparison_min_gap"] = number_or_null(cmp_min);
    r["comparison_strict_min"] = number_or_null(strict_min);
    r["comparison_passed"] = cmp_ok;
    r["passed"] = residual_ok && sw.passed && cmp_ok;
    write_json(dir / "squeeze.json", r);
    return r;
  });
}

ordered_json operator_check_stage(const RunConfig& cfg, const fs::path& out) {
  return in_stage("operator-check", [&] {
    const Grid g = cfg.grid();
    const double a = cfg.oc_profile == "poisson" ? 1.0 : cfg.oc_width;
    const auto profile = [a](double x) {
      return a / (std::numbers::pi * (1.0 + a * a * x * x));
    };
    std::vector<double> u(g.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = profile(g.point(j));
    const std::vector<double> spectral = apply_spectral(g, u);

    // nodes spread evenly over |x| <= L/2
    const std::size_t n = static_cast<std::size_t>(cfg.oc_points);
    const std::size_t lo = g.size() / 4, hi = 3 * g.size() / 4;
    std::vector<double> xs, sp, oracle, err;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j =
          n == 1 ? g.size() / 2 : lo + (hi - lo) * k / (n - 1);
      const OracleValue o = oracle_pv(profile, g.point(j), cfg.oc_cutoff,
                                      static_cast<int>(cfg.oc_quad_points), FarFieldLimits{});
      xs.push_back(g.point(j));
      sp.push_back(spectral[j]);
      oracle.push_back(o.value);
      err.push_back(std::abs(spectral[j] - o.value));
    }
    write_csv(out / "operator_check.csv", {"x", "spectral", "oracle", "abs_err"},
              {xs, sp, oracle, err});
    ordered_json r;
    r["profile"] = cfg.oc_profile;
    r["width"] = a;
    r["max_abs_err"] = *std::max_element(err.begin(), err.end());
    r["threshold"] = cfg.operator_threshold();
    r["passed"] = r["max_abs_err"].get<double>() <= cfg.operator_threshold();
    return r;
  });
}

ordered_json run_pipeline(const RunConfig& cfg, const fs::path& out) {
  evolve_stage(cfg, out);
  ordered_json summary;
  summary["analyze"] = analyze_stage(cfg, out);
  if (cfg.squeeze) {
    ordered_json sq = squeeze_stage(cfg, out);
    if (!sq["passed"].get<bool>()) throw StageError("squeeze-test", "verification failed");
    summary["squeeze"] = std::move(sq);
  }
  return summary;
}

}  // namespace pnwave::app
