#include "pnwave/potential.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pnwave {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr int samples_per_margin = 10000;
constexpr int derivative_probes = 101;
constexpr double fd_step = 1e-5;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

// Locates the stable root of F1 = (A/2pi) sin(2 pi u) - drive in
// [center - 1/4, center + 1/4], where F2 >= 0.
double stable_root(const BistablePotential& p, double center) {
  const double lo = center - 0.25, hi = center + 0.25;
  const auto f = [&](double u) { return p.F1(u); };
  if (!(f(lo) < 0.0 && f(hi) > 0.0)) {
    throw std::domain_error("drive too large: F' has no stable root near " +
                            std::to_string(center));
  }
  std::uintmax_t iters = 200;
  const auto tol = boost::math::tools::eps_tolerance<double>(52);
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  double u = 0.5 * (r.first + r.second);
  // Newton polish to machine precision.
  for (int i = 0; i < 3; ++i) u -= p.F1(u) / p.F2(u);
  return u;
}

}  // namespace

std::string_view to_string(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::sinusoidal: return "sinusoidal";
    case PotentialFamily::quartic: return "quartic";
    case PotentialFamily::camel_hump: return "camel-hump";
    case PotentialFamily::tilted_sinusoidal: return "tilted-sinusoidal";
  }
  return "unknown";
}

PotentialFamily potential_family_from_string(std::string_view name) {
  if (name == "sinusoidal") return PotentialFamily::sinusoidal;
  if (name == "quartic") return PotentialFamily::quartic;
  if (name == "camel-hump") return PotentialFamily::camel_hump;
  if (name == "tilted-sinusoidal") return PotentialFamily::tilted_sinusoidal;
  throw std::invalid_argument("unknown potential family '" + std::string(name) + "'");
}

double BistablePotential::F(double u) const noexcept {
  switch (family_) {
    case PotentialFamily::sinusoidal:
    case PotentialFamily::tilted_sinusoidal:
      return amplitude_ / (two_pi * two_pi) * (1.0 - std::cos(two_pi * u)) - drive_ * u;
    case PotentialFamily::quartic: {
      const double s = 1.0 - u * u;
      return 0.25 * s * s;
    }
    case PotentialFamily::camel_hump: {
      const double s = 1.0 - u * u;
      return s * s * (0.25 + hump_ * u * u);
    }
  }
  return 0.0;
}

double BistablePotential::F1(double u) const noexcept {
  switch (family_) {
    case PotentialFamily::sinusoidal:
    case PotentialFamily::tilted_sinusoidal:
      return amplitude_ / two_pi * std::sin(two_pi * u) - drive_;
    case PotentialFamily::quartic:
      return u * u * u - u;
    case PotentialFamily::camel_hump: {
      const double s = 1.0 - u * u;
      return -4.0 * u * s * (0.25 + hump_ * u * u) + 2.0 * hump_ * u * s * s;
    }
  }
  return 0.0;
}

double BistablePotential::F2(double u) const noexcept {
  switch (family_) {
    case PotentialFamily::sinusoidal:
    case PotentialFamily::tilted_sinusoidal:
      return amplitude_ * std::cos(two_pi * u);
    case PotentialFamily::quartic:
      return 3.0 * u * u - 1.0;
    case PotentialFamily::camel_hump: {
      // F = 1/4 + (hump - 1/2) u^2 + (1/4 - 2 hump) u^4 + hump u^6
      const double u2 = u * u;
      return 2.0 * (hump_ - 0.5) + 12.0 * (0.25 - 2.0 * hump_) * u2 + 30.0 * hump_ * u2 * u2;
    }
  }
  return 0.0;
}

double BistablePotential::F3(double u) const noexcept {
  switch (family_) {
    case PotentialFamily::sinusoidal:
    case PotentialFamily::tilted_sinusoidal:
      return -amplitude_ * two_pi * std::sin(two_pi * u);
    case PotentialFamily::quartic:
      return 6.0 * u;
    case PotentialFamily::camel_hump:
      return 24.0 * (0.25 - 2.0 * hump_) * u + 120.0 * hump_ * u * u * u;
  }
  return 0.0;
}

double BistablePotential::f2_sup() const {
  const double lo = eta_l_ - delta0_, hi = eta_r_ + delta0_;
  constexpr int n = 20000;
  double m = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = lo + (hi - lo) * static_cast<double>(i) / n;
    m = std::max(m, std::abs(F2(u)));
  }
  return m;
}

BistablePotential BistablePotential::with_delta0(double delta0) const {
  require_positive(delta0, "delta0");
  BistablePotential p = *this;
  p.delta0_ = delta0;
  return p;
}

BistablePotential make_sinusoidal(double amplitude, double delta0) {
  require_positive(amplitude, "A");
  require_positive(delta0, "delta0");
  BistablePotential p;
  p.family_ = PotentialFamily::sinusoidal;
  p.amplitude_ = amplitude;
  p.eta_l_ = 0.0;
  p.eta_r_ = 1.0;
  p.delta0_ = delta0;
  return p;
}

BistablePotential make_tilted_sinusoidal(double amplitude, double drive, double delta0) {
  require_positive(amplitude, "A");
  require_positive(delta0, "delta0");
  if (!std::isfinite(drive)) throw std::invalid_argument("drive must be finite");
  if (drive == 0.0) return make_sinusoidal(amplitude, delta0);
  BistablePotential p;
  p.family_ = PotentialFamily::tilted_sinusoidal;
  p.amplitude_ = amplitude;
  p.drive_ = drive;
  p.delta0_ = delta0;
  p.eta_l_ = stable_root(p, 0.0);
  p.eta_r_ = stable_root(p, 1.0);
  return p;
}

BistablePotential make_quartic(double delta0) {
  require_positive(delta0, "delta0");
  BistablePotential p;
  p.family_ = PotentialFamily::quartic;
  p.eta_l_ = -1.0;
  p.eta_r_ = 1.0;
  p.delta0_ = delta0;
  return p;
}

BistablePotential make_camel_hump(double hump, double delta0) {
  require_positive(hump, "hump");
  require_positive(delta0, "delta0");
  BistablePotential p;
  p.family_ = PotentialFamily::camel_hump;
  p.hump_ = hump;
  p.eta_l_ = -1.0;
  p.eta_r_ = 1.0;
  p.delta0_ = delta0;
  return p;
}

WellCurvature validate(const BistablePotential& p) {
  const double el = p.eta_l(), er = p.eta_r(), d0 = p.delta0();
  if (!(el < er)) throw std::domain_error("bistable hypothesis: eta_l < eta_r violated");
  if (!(d0 > 0.0)) throw std::domain_error("well margin hypothesis: delta0 must be positive");

  for (double w : {el, er}) {
    if (std::abs(p.F1(w)) > 1e-10) {
      std::ostringstream os;
      os << "bistable hypothesis: F'(" << w << ") = " << p.F1(w) << " is not zero";
      throw std::domain_error(os.str());
    }
  }

  double beta = std::numeric_limits<double>::infinity();
  for (double w : {el, er}) {
    for (int i = 0; i <= samples_per_margin; ++i) {
      const double u = w - d0 + 2.0 * d0 * static_cast<double>(i) / samples_per_margin;
      const double f2 = p.F2(u);
      if (!(f2 > 0.0)) {
        std::ostringstream os;
        os << "well margin hypothesis: F''(" << u << ") = " << f2
           << " is not positive within delta0 = " << d0 << " of the well " << w;
        throw std::domain_error(os.str());
      }
      beta = std::min(beta, f2);
    }
  }

  // Derivative tables must be consistent with central differences of F.
  const double lo = el - d0, hi = er + d0;
  double scale1 = 0.0, scale2 = 0.0, scale3 = 0.0;
  for (int i = 0; i < derivative_probes; ++i) {
    const double u = lo + (hi - lo) * i / (derivative_probes - 1);
    scale1 = std::max(scale1, std::abs(p.F1(u)));
    scale2 = std::max(scale2, std::abs(p.F2(u)));
    scale3 = std::max(scale3, std::abs(p.F3(u)));
  }
  auto check = [&](const char* name, double analytic, double numeric, double scale, double u) {
    if (std::abs(analytic - numeric) > 1e-6 * std::max(scale, 1e-12)) {
      std::ostringstream os;
      os << "derivative consistency: " << name << "(" << u << ") = " << analytic
         << " but central difference gives " << numeric;
      throw std::domain_error(os.str());
    }
  };
  for (int i = 0; i < derivative_probes; ++i) {
    const double u = lo + (hi - lo) * i / (derivative_probes - 1);
    const double h = fd_step;
    check("F'", p.F1(u), (p.F(u + h) - p.F(u - h)) / (2 * h), scale1, u);
    check("F''", p.F2(u), (p.F1(u + h) - p.F1(u - h)) / (2 * h), scale2, u);
    check("F'''", p.F3(u), (p.F2(u + h) - p.F2(u - h)) / (2 * h), scale3, u);
  }
  return {beta};
}

}  // namespace pnwave
