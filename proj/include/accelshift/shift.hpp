#pragma once

// Vacuum-fluctuation / radiation-reaction split of the boundary-dependent
// ground-state shift. All shifts are per alpha_0 ("reduced units") with the
// overall 3 omega0 / (128 pi) folded in.

#include <array>
#include <optional>

#include "accelshift/structfun.hpp"
#include "accelshift/units.hpp"

namespace accelshift {

struct ComponentShift {
  double vf = 0.0;
  double rr = 0.0;
  double total = 0.0;
};

struct ShiftBreakdown {
  double vf_reduced = 0.0;
  double rr_reduced = 0.0;
  double total_reduced = 0.0;
  /// sum_ij sqrt(p_i p_j) [nbar2 f_ij - g_ij], units of 1/time^3.
  double bracket = 0.0;
  std::array<ComponentShift, 4> per_component{};
  /// Absolute error bound on total_reduced propagated from the g quadratures.
  double err_est = 0.0;
  StatFunctions stat{};
};

/// Prefactor 3 omega0 / (128 pi).
double reduced_prefactor(double omega0);

double shift_vf(const AtomSpec& atom, const Kinematics& kin, const QuadratureSettings& s = {});
double shift_rr(const AtomSpec& atom, const Kinematics& kin);

/// Evaluates vf, rr and the direct total contraction; throws ConsistencyError
/// if vf + rr and the direct total disagree beyond 1e-10 relative.
ShiftBreakdown shift_total(const AtomSpec& atom, const Kinematics& kin,
                           const QuadratureSettings& s = {});

/// Static atom (a = 0): 3 omega0/(128 pi) sum_i p_i g_ii(static).
double shift_static(const AtomSpec& atom, double z, const QuadratureSettings& s = {});

struct ThermalAsymptote {
  double value = 0.0;
  /// Inside T << omega0, z >> 1/T for an isotropic atom.
  bool valid = false;
};

/// Long-distance, low-temperature shift of a static isotropic atom in a
/// thermal bath, -T / (16 pi z^3) per alpha_0.
ThermalAsymptote thermal_asymptote_longdist(const AtomSpec& atom, double z, double temperature,
                                            double strictness = 10.0);

struct ComparatorResult {
  double accel_total = 0.0;
  double static_total = 0.0;
  /// total(a) / total(0); empty when the static shift is indistinguishable from zero.
  std::optional<double> ratio_to_static;
  ThermalAsymptote thermal;  // at the Unruh temperature a / (2 pi)
  /// thermal / total(a); empty when the thermal asymptote is outside its regime.
  std::optional<double> ratio_thermal_to_accel;
};

ComparatorResult ratios(const AtomSpec& atom, const Kinematics& kin, const QuadratureSettings& s = {});

namespace detail {

/// Contraction of precomputed statistical functions. `xz_multiplicity`
/// exists so the isotropic reduction check can demonstrate that any value
/// other than 1 breaks agreement with the closed-form asymptotes.
ShiftBreakdown contract(const StatFunctions& stat, double omega0, const Polarization& pol,
                        double xz_multiplicity = 1.0);

}  // namespace detail

}  // namespace accelshift
