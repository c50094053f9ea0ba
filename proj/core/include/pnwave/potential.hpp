#pragma once

#include <string>
#include <string_view>

namespace pnwave {

enum class PotentialFamily { sinusoidal, quartic, camel_hump, tilted_sinusoidal };

std::string_view to_string(PotentialFamily f);
PotentialFamily potential_family_from_string(std::string_view name);

/// Double-well potential F with stable wells eta_l < eta_r.
///
/// Families:
///   sinusoidal         F(u) = A/(4 pi^2) (1 - cos 2 pi u),            wells 0, 1
///   tilted-sinusoidal  F(u) = A/(4 pi^2) (1 - cos 2 pi u) - drive u,   wells near 0, 1
///   quartic            F(u) = (1 - u^2)^2 / 4,                          wells -1, 1
///   camel-hump         F(u) = (1 - u^2)^2 (1/4 + hump u^2),             wells -1, 1
/// The camel-hump family has a minor well at u = 0 when hump > 1/2.
///
/// `delta0` is the margin around each well on which F'' must stay positive.
class BistablePotential {
 public:
  PotentialFamily family() const noexcept { return family_; }
  double eta_l() const noexcept { return eta_l_; }
  double eta_r() const noexcept { return eta_r_; }
  double delta0() const noexcept { return delta0_; }
  double amplitude() const noexcept { return amplitude_; }
  double drive() const noexcept { return drive_; }
  double hump() const noexcept { return hump_; }

  double F(double u) const noexcept;
  double F1(double u) const noexcept;
  double F2(double u) const noexcept;
  double F3(double u) const noexcept;

  /// sup |F''| over the admissible range [eta_l - delta0, eta_r + delta0].
  double f2_sup() const;

  BistablePotential with_delta0(double delta0) const;

  friend BistablePotential make_sinusoidal(double amplitude, double delta0);
  friend BistablePotential make_tilted_sinusoidal(double amplitude, double drive, double delta0);
  friend BistablePotential make_quartic(double delta0);
  friend BistablePotential make_camel_hump(double hump, double delta0);

 private:
  BistablePotential() = default;

  PotentialFamily family_ = PotentialFamily::sinusoidal;
  double eta_l_ = 0.0;
  double eta_r_ = 1.0;
  double delta0_ = 0.1;
  double amplitude_ = 1.0;
  double drive_ = 0.0;
  double hump_ = 0.0;
};

BistablePotential make_sinusoidal(double amplitude, double delta0 = 0.1);
/// Throws "drive too large" when the wells near 0 and 1 disappear.
BistablePotential make_tilted_sinusoidal(double amplitude, double drive, double delta0 = 0.1);
BistablePotential make_quartic(double delta0 = 0.1);
BistablePotential make_camel_hump(double hump = 1.0, double delta0 = 0.1);

/// Infimum of F'' over the two delta0-neighborhoods of the wells.
struct WellCurvature {
  double beta = 0.0;
};

/// Checks the bistable hypotheses (F' vanishes at the wells, F'' > 0 on the
/// margins, derivative tables consistent) and returns the curvature floor.
/// Throws std::domain_error naming the violated hypothesis.
WellCurvature validate(const BistablePotential& p);

}  // namespace pnwave
