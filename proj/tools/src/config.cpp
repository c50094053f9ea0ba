#include "pnwave_app/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace pnwave::app {

namespace {

using nlohmann::json;

enum class Kind { number, integer, boolean, string };

struct Field {
  Kind kind;
  std::function<void(RunConfig&, const json&)> set;
  std::function<json(const RunConfig&)> get;
};

template <typename T>
Field make_field(Kind kind, T RunConfig::*member) {
  return {kind, [member](RunConfig& c, const json& v) { c.*member = v.get<T>(); },
          [member](const RunConfig& c) { return json(c.*member); }};
}

const std::vector<std::pair<std::string, Field>>& schema() {
  static const std::vector<std::pair<std::string, Field>> fields = {
      {"potential", make_field(Kind::string, &RunConfig::potential)},
      {"A", make_field(Kind::number, &RunConfig::A)},
      {"drive", make_field(Kind::number, &RunConfig::drive)},
      {"hump", make_field(Kind::number, &RunConfig::hump)},
      {"delta0", make_field(Kind::number, &RunConfig::delta0)},
      {"L", make_field(Kind::number, &RunConfig::L)},
      {"N", make_field(Kind::integer, &RunConfig::N)},
      {"dt", make_field(Kind::number, &RunConfig::dt)},
      {"t_end", make_field(Kind::number, &RunConfig::t_end)},
      {"order", make_field(Kind::integer, &RunConfig::order)},
      {"recenter_every", make_field(Kind::number, &RunConfig::recenter_every)},
      {"recenter_threshold", make_field(Kind::number, &RunConfig::recenter_threshold)},
      {"record_every", make_field(Kind::number, &RunConfig::record_every)},
      {"range_check", make_field(Kind::boolean, &RunConfig::range_check)},
      {"initial", make_field(Kind::string, &RunConfig::initial)},
      {"initial_width", make_field(Kind::number, &RunConfig::initial_width)},
      {"initial_amplitude", make_field(Kind::number, &RunConfig::initial_amplitude)},
      {"ref_width", make_field(Kind::number, &RunConfig::ref_width)},
      {"tail_x_lo", make_field(Kind::number, &RunConfig::tail_x_lo)},
      {"tail_x_hi", make_field(Kind::number, &RunConfig::tail_x_hi)},
      {"idc2_r_min", make_field(Kind::number, &RunConfig::idc2_r_min)},
      {"idc2_r_max", make_field(Kind::number, &RunConfig::idc2_r_max)},
      {"idc2_r_count", make_field(Kind::integer, &RunConfig::idc2_r_count)},
      {"rate_fit_required", make_field(Kind::boolean, &RunConfig::rate_fit_required)},
      {"c_abs_max", make_field(Kind::number, &RunConfig::c_abs_max)},
      {"squeeze", make_field(Kind::boolean, &RunConfig::squeeze)},
      {"squeeze_delta1", make_field(Kind::number, &RunConfig::squeeze_delta1)},
      {"squeeze_delta", make_field(Kind::number, &RunConfig::squeeze_delta)},
      {"squeeze_l", make_field(Kind::number, &RunConfig::squeeze_l)},
      {"sigma_rule", make_field(Kind::string, &RunConfig::sigma_rule)},
      {"squeeze_times", make_field(Kind::integer, &RunConfig::squeeze_times)},
      {"squeeze_t_max", make_field(Kind::number, &RunConfig::squeeze_t_max)},
      {"squeeze_points", make_field(Kind::integer, &RunConfig::squeeze_points)},
      {"squeeze_x_span", make_field(Kind::number, &RunConfig::squeeze_x_span)},
      {"squeeze_floor", make_field(Kind::number, &RunConfig::squeeze_floor)},
      {"comparison_pairs", make_field(Kind::integer, &RunConfig::comparison_pairs)},
      {"oc_profile", make_field(Kind::string, &RunConfig::oc_profile)},
      {"oc_width", make_field(Kind::number, &RunConfig::oc_width)},
      {"oc_points", make_field(Kind::integer, &RunConfig::oc_points)},
      {"oc_cutoff", make_field(Kind::number, &RunConfig::oc_cutoff)},
      {"oc_quad_points", make_field(Kind::integer, &RunConfig::oc_quad_points)},
      {"oc_threshold", make_field(Kind::number, &RunConfig::oc_threshold)},
      {"seed", make_field(Kind::integer, &RunConfig::seed)},
  };
  return fields;
}

const Field* find_field(const std::string& key) {
  for (const auto& [name, field] : schema()) {
    if (name == key) return &field;
  }
  return nullptr;
}

bool type_matches(Kind kind, const json& v) {
  switch (kind) {
    case Kind::number: return v.is_number();
    case Kind::integer:
      return v.is_number_integer() ||
             (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>());
    case Kind::boolean: return v.is_boolean();
    case Kind::string: return v.is_string();
  }
  return false;
}

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::number: return "number";
    case Kind::integer: return "integer";
    case Kind::boolean: return "boolean";
    case Kind::string: return "string";
  }
  return "?";
}

void assign(RunConfig& cfg, const std::string& key, const json& value) {
  const Field* f = find_field(key);
  if (!f) throw ConfigError("unknown config key '" + key + "'");
  if (!type_matches(f->kind, value)) {
    throw ConfigError("config key '" + key + "' expects a " + kind_name(f->kind) + ", got " +
                      value.dump());
  }
  if (f->kind == Kind::integer && value.is_number_float()) {
    f->set(cfg, json(static_cast<std::int64_t>(value.get<double>())));
  } else {
    f->set(cfg, value);
  }
}

json parse_override_value(Kind kind, const std::string& key, const std::string& text) {
  switch (kind) {
    case Kind::string: return json(text);
    case Kind::boolean:
      if (text == "true" || text == "1") return json(true);
      if (text == "false" || text == "0") return json(false);
      break;
    case Kind::integer:
    case Kind::number: {
      try {
        const json v = json::parse(text);
        if (v.is_number()) return v;
      } catch (const json::parse_error&) {
      }
      break;
    }
  }
  throw ConfigError("config key '" + key + "' expects a " + kind_name(kind) + ", got '" + text +
                    "'");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

Grid RunConfig::grid() const { return make_grid(L, static_cast<std::size_t>(N)); }

BistablePotential RunConfig::make_potential() const {
  switch (potential_family_from_string(potential)) {
    case PotentialFamily::sinusoidal:
      return drive == 0.0 ? make_sinusoidal(A, delta0) : make_tilted_sinusoidal(A, drive, delta0);
    case PotentialFamily::tilted_sinusoidal: return make_tilted_sinusoidal(A, drive, delta0);
    case PotentialFamily::quartic: return make_quartic(delta0);
    case PotentialFamily::camel_hump: return make_camel_hump(hump, delta0);
  }
  throw ConfigError("unknown potential");
}

EvolveConfig RunConfig::evolve_config() const {
  EvolveConfig e;
  e.dt = dt;
  e.t_end = t_end;
  e.order = order == 1 ? EtdOrder::first : EtdOrder::second;
  e.recenter_every = recenter_every;
  e.recenter_threshold = recenter_threshold;
  e.record_every = record_every;
  e.range_check = range_check;
  e.keep_snapshots = true;
  return e;
}

InitialSpec RunConfig::initial_spec() const {
  InitialSpec s;
  s.kind = initial_kind_from_string(initial);
  s.width = initial_width;
  s.amplitude = initial_amplitude;
  s.ref_width = ref_width;
  return s;
}

SigmaRule RunConfig::sigma() const {
  if (sigma_rule == "printed") return SigmaRule::printed;
  if (sigma_rule == "sufficient") return SigmaRule::sufficient;
  throw ConfigError("sigma_rule must be 'printed' or 'sufficient'");
}

std::vector<double> RunConfig::idc2_radii() const {
  std::vector<double> r(static_cast<std::size_t>(idc2_r_count));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = idc2_r_min + (idc2_r_max - idc2_r_min) * static_cast<double>(i) /
                            static_cast<double>(r.size() - 1);
  }
  return r;
}

double RunConfig::operator_threshold() const {
  return oc_threshold > 0.0 ? oc_threshold : std::max(1e-6, 5.0 / L);
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  for (const auto& [name, field] : schema()) j[name] = field.get(*this);
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  for (const auto& [key, value] : j.items()) assign(cfg, key, value);
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  require(cfg.L > 0.0, "L must be positive");
  require(cfg.N >= 8, "N must be at least 8");
  require(cfg.N % 2 == 0, "N must be even");
  require(cfg.dt > 0.0, "dt must be positive");
  require(cfg.t_end > 0.0, "t_end must be positive");
  require(cfg.order == 1 || cfg.order == 2, "order must be 1 or 2");
  require(cfg.record_every > 0.0, "record_every must be positive");
  require(cfg.recenter_every >= 0.0, "recenter_every must be >= 0");
  require(cfg.recenter_threshold >= 0.0, "recenter_threshold must be >= 0");
  require(cfg.delta0 > 0.0, "delta0 must be positive");
  require(cfg.tail_x_lo >= 10.0 && cfg.tail_x_hi > cfg.tail_x_lo,
          "tail_x_lo/tail_x_hi must satisfy 10 <= tail_x_lo < tail_x_hi");
  require(cfg.tail_x_hi < cfg.L, "tail_x_hi must be smaller than L");
  require(cfg.idc2_r_count >= 2, "idc2_r_count must be at least 2");
  require(cfg.idc2_r_min > 0.0 && cfg.idc2_r_max > cfg.idc2_r_min,
          "idc2_r_min/idc2_r_max must satisfy 0 < idc2_r_min < idc2_r_max");
  require(cfg.idc2_r_max <= cfg.L / 2.0, "idc2_r_max must not exceed L/2");
  require(cfg.squeeze_delta1 > 0.0 && cfg.squeeze_delta1 < cfg.delta0,
          "squeeze_delta1 must lie in (0, delta0)");
  require(cfg.squeeze_delta > 0.0 && cfg.squeeze_delta < cfg.squeeze_delta1,
          "squeeze_delta must lie in (0, squeeze_delta1)");
  require(cfg.squeeze_times >= 1 && cfg.squeeze_points >= 1,
          "squeeze_times and squeeze_points must be positive");
  require(cfg.comparison_pairs >= 0, "comparison_pairs must be >= 0");
  require(cfg.oc_points >= 1, "oc_points must be positive");
  require(cfg.oc_cutoff > 1.0, "oc_cutoff must exceed 1");
  require(cfg.oc_quad_points >= 2, "oc_quad_points must be at least 2");
  require(cfg.oc_width > 0.0, "oc_width must be positive");
  require(cfg.oc_profile == "poisson" || cfg.oc_profile == "psi-derivative",
          "oc_profile must be 'poisson' or 'psi-derivative'");
  (void)cfg.sigma();
  try {
    (void)initial_kind_from_string(cfg.initial);
    const BistablePotential p = cfg.make_potential();
    (void)validate(p);
    check_config(cfg.evolve_config(), p);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_config(const std::optional<std::filesystem::path>& path,
                       const std::vector<std::string>& overrides,
                       std::optional<std::uint64_t> seed) {
  json merged = json::object();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file " + path->string());
    try {
      merged = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config file " + path->string() + " is not valid JSON: " + e.what());
    }
    if (!merged.is_object()) throw ConfigError("config file must hold a JSON object");
  }
  RunConfig cfg = config_from_json(merged);
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("override '" + o + "' must have the form key=value");
    }
    const std::string key = o.substr(0, eq);
    const Field* f = find_field(key);
    if (!f) throw ConfigError("unknown config key '" + key + "'");
    assign(cfg, key, parse_override_value(f->kind, key, o.substr(eq + 1)));
  }
  if (seed) cfg.seed = *seed;
  validate_config(cfg);
  return cfg;
}

}  // namespace pnwave::app
