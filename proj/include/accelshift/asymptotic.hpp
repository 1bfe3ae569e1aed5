#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "accelshift/structfun.hpp"
#include "accelshift/units.hpp"

namespace accelshift {

enum class Regime {
  LowAShort,
  LowAIntermediate,
  LowALong,
  HighAShort,
  HighAFarIntermediate,
  HighAFarLong,
  NearResNear,
  NearResFar,
  Ambiguous,
};

/// Coarse acceleration band, resolved even when the distance regime is not.
enum class AccelBand { Low, High, NearResonance };

std::string_view to_string(Regime r);
std::string_view to_string(AccelBand b);

struct RegimeInfo {
  Regime regime = Regime::Ambiguous;
  AccelBand band = AccelBand::Low;
  double a_over_w0 = 0.0;
  double az = 0.0;
  double w0z = 0.0;
  /// Smallest factor by which the assigned regime's inequalities hold
  /// (>= strictness when assigned; for Ambiguous, the best candidate's margin).
  double margin = 0.0;
};

/// Factor by which (a/omega0, az, omega0 z) satisfy `r`'s defining
/// inequalities; values below 1 mean an inequality is violated.
double regime_margin(Regime r, double a_over_w0, double az, double w0z);

RegimeInfo classify(double omega0, double a, double z, double strictness = 10.0);

struct AsymptoteValues {
  std::optional<double> vf;
  std::optional<double> rr;
  double total = 0.0;
  /// NearResFar: e^{2 pi omega0 / a} used in place of e^{2 pi} (a != omega0).
  bool generalized_planck_factor = false;
  /// HighAFarIntermediate: no vf/rr dominance is asserted.
  bool dominance_indeterminate = false;
  /// Values cover the y and z components only; compare() restricts the
  /// exact shift the same way.
  bool yz_only = false;
  /// 2 (omega0 / a) ln(2 a z) for the far high-acceleration forms.
  std::optional<double> log_phase;
};

struct AsymptoteReport {
  Regime regime = Regime::Ambiguous;
  double margin = 0.0;
  Kinematics kin{};
  AsymptoteValues asymptote;
  /// Exact shift, restricted to the components the asymptote covers.
  double exact_total = 0.0;
  double exact_vf = 0.0;
  double exact_rr = 0.0;
  double rel_deviation = 0.0;
};

/// Closed-form expansion for `regime`, all in reduced units (per alpha_0).
/// Throws UnsupportedRegime for Ambiguous.
AsymptoteValues asymptote(Regime regime, const AtomSpec& atom, const Kinematics& kin);

/// Exact shift versus the asymptote of `regime` at one point.
AsymptoteReport compare(Regime regime, const AtomSpec& atom, const Kinematics& kin,
                        const QuadratureSettings& s = {});

/// compare() over a grid, deepest margin first.
std::vector<AsymptoteReport> deviation_scan(Regime regime, const AtomSpec& atom,
                                            const std::vector<Kinematics>& grid,
                                            const QuadratureSettings& s = {});

}  // namespace accelshift
