#include "accelshift/shift.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>

#include "accelshift/errors.hpp"

namespace accelshift {

using std::numbers::pi;

double reduced_prefactor(double omega0) { return 3.0 * omega0 / (128.0 * pi); }

namespace detail {

ShiftBreakdown contract(const StatFunctions& stat, double omega0, const Polarization& pol,
                        double xz_multiplicity) {
  const std::array<long double, 4> w = {pol.px, pol.py, pol.pz,
                                        xz_multiplicity * std::sqrt(static_cast<long double>(pol.px) * pol.pz)};
  const long double pref = 3.0L * omega0 / (128.0L * std::numbers::pi_v<long double>);
  const long double n = stat.nbar2;

  ShiftBreakdown out;
  out.stat = stat;
  long double vf = 0, rr = 0, tot = 0, bracket = 0, err = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const long double f = stat.f[i], g = stat.g[i];
    const long double vf_i = -pref * w[i] * ((1.0L + n) * f - g);
    const long double rr_i = pref * w[i] * f;
    const long double tot_i = -pref * w[i] * (n * f - g);
    out.per_component[i] = {static_cast<double>(vf_i), static_cast<double>(rr_i), static_cast<double>(tot_i)};
    vf += vf_i;
    rr += rr_i;
    tot += tot_i;
    bracket += w[i] * (n * f - g);
    err += pref * std::abs(w[i]) * stat.g_err[i];
  }
  out.vf_reduced = static_cast<double>(vf);
  out.rr_reduced = static_cast<double>(rr);
  out.total_reduced = static_cast<double>(tot);
  out.bracket = static_cast<double>(bracket);
  out.err_est = static_cast<double>(err);

  const long double gap = std::abs(vf + rr - tot);
  const long double allowed = 1e-10L * std::abs(tot) + 64.0L * LDBL_EPSILON * (std::abs(vf) + std::abs(rr));
  if (!(gap <= allowed)) {
    std::ostringstream msg;
    msg << "vf + rr deviates from the direct total contraction by " << static_cast<double>(gap);
    throw ConsistencyError(msg.str());
  }
  return out;
}

}  // namespace detail

ShiftBreakdown shift_total(const AtomSpec& atom, const Kinematics& kin, const QuadratureSettings& s) {
  validate(atom, kin);
  return detail::contract(stat_functions(atom.omega0, kin.z, kin.accel, s), atom.omega0, atom.pol);
}

double shift_vf(const AtomSpec& atom, const Kinematics& kin, const QuadratureSettings& s) {
  return shift_total(atom, kin, s).vf_reduced;
}

double shift_rr(const AtomSpec& atom, const Kinematics& kin) {
  validate(atom, kin);
  const Polarization& p = atom.pol;
  const std::array<long double, 4> w = {p.px, p.py, p.pz, std::sqrt(static_cast<long double>(p.px) * p.pz)};
  long double sum = 0;
  for (Component c : kComponents)
    sum += w[static_cast<std::size_t>(c)] * f_component(c, atom.omega0, kin.z, kin.accel);
  return static_cast<double>(3.0L * atom.omega0 / (128.0L * std::numbers::pi_v<long double>) * sum);
}

double shift_static(const AtomSpec& atom, double z, const QuadratureSettings& s) {
  validate(atom, Kinematics{0.0, z});
  const std::array<double, 3> w = {atom.pol.px, atom.pol.py, atom.pol.pz};
  long double sum = 0;
  for (Component c : {Component::XX, Component::YY, Component::ZZ})
    sum += w[static_cast<std::size_t>(c)] * static_cast<long double>(g_static_limit(c, atom.omega0, z, s).value);
  return static_cast<double>(reduced_prefactor(atom.omega0) * sum);
}

ThermalAsymptote thermal_asymptote_longdist(const AtomSpec& atom, double z, double temperature,
                                            double strictness) {
  if (!(z > 0)) throw DomainError("z", "must be > 0");
  if (!(temperature >= 0)) throw DomainError("temperature", "must be >= 0");
  ThermalAsymptote r;
  r.value = -temperature / (16.0 * pi * z * z * z);
  r.valid = temperature > 0 && strictness * temperature <= atom.omega0 && z * temperature >= strictness &&
            atom.pol.isotropic();
  return r;
}

ComparatorResult ratios(const AtomSpec& atom, const Kinematics& kin, const QuadratureSettings& s) {
  const ShiftBreakdown accel = shift_total(atom, kin, s);
  const ShiftBreakdown still = shift_total(atom, Kinematics{0.0, kin.z}, s);

  ComparatorResult r;
  r.accel_total = accel.total_reduced;
  r.static_total = still.total_reduced;
  if (std::abs(still.total_reduced) >= 1e3 * still.err_est && still.total_reduced != 0.0)
    r.ratio_to_static = accel.total_reduced / still.total_reduced;

  r.thermal = thermal_asymptote_longdist(atom, kin.z, kin.accel / (2.0 * pi));
  if (r.thermal.valid && std::abs(accel.total_reduced) >= 1e3 * accel.err_est && accel.total_reduced != 0.0)
    r.ratio_thermal_to_accel = r.thermal.value / accel.total_reduced;
  return r;
}

}  // namespace accelshift
