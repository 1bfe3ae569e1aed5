#include "accelshift/units.hpp"

#include <string>

#include "accelshift/errors.hpp"

namespace accelshift {

namespace {

void require_finite(const char* field, double v) {
  if (!std::isfinite(v)) throw DomainError(field, "must be finite");
}

}  // namespace

NaturalInputs to_natural(double a_si, double z_si, double omega0) {
  require_finite("a_si", a_si);
  require_finite("z_si", z_si);
  require_finite("omega0", omega0);
  if (a_si < 0) throw DomainError("a_si", "acceleration must be >= 0");
  if (z_si <= 0) throw DomainError("z_si", "distance must be > 0");
  if (omega0 <= 0) throw DomainError("omega0", "frequency must be > 0");
  return {Kinematics{a_si / kSpeedOfLight, z_si / kSpeedOfLight}, omega0};
}

SiInputs to_si(const NaturalInputs& in) {
  return {in.kin.accel * kSpeedOfLight, in.kin.z * kSpeedOfLight, in.omega0};
}

Polarization validate_polarization(double px, double py, double pz) {
  for (double p : {px, py, pz}) {
    if (!std::isfinite(p)) throw ValidationError("polarization weight is not finite");
    if (p < 0) throw ValidationError("polarization weight is negative");
  }
  const double sum = px + py + pz;
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("polarization weights sum to " + std::to_string(sum) + ", expected 1");
  return {px, py, pz};
}

void validate(const AtomSpec& atom, const Kinematics& kin) {
  require_finite("omega0", atom.omega0);
  require_finite("accel", kin.accel);
  require_finite("z", kin.z);
  if (atom.omega0 <= 0) throw DomainError("omega0", "frequency must be > 0");
  if (kin.accel < 0) throw DomainError("accel", "acceleration must be >= 0");
  if (kin.z <= 0) throw DomainError("z", "distance must be > 0");
  validate_polarization(atom.pol.px, atom.pol.py, atom.pol.pz);
}

}  // namespace accelshift
