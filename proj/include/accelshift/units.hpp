#pragma once

// Natural units: c = hbar = 1, every quantity expressed in powers of seconds.
// Accelerations become frequencies (a_SI / c) and lengths become times (z_SI / c).

#include <cmath>

namespace accelshift {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

enum class UnitMode { SI, Natural };

/// Per-axis polarizability fractions, alpha_i = p_i * alpha_0.
struct Polarization {
  double px = 1.0 / 3.0;
  double py = 1.0 / 3.0;
  double pz = 1.0 / 3.0;

  /// Weight of the off-diagonal xz contraction, sqrt(px * pz).
  double w_xz() const { return std::sqrt(px * pz); }
  bool isotropic(double tol = 1e-9) const {
    return std::abs(px - 1.0 / 3.0) < tol && std::abs(py - 1.0 / 3.0) < tol &&
           std::abs(pz - 1.0 / 3.0) < tol;
  }
};

struct AtomSpec {
  double omega0 = 1.0;  ///< transition angular frequency
  Polarization pol{};
};

/// Proper acceleration and wall distance, both natural units.
struct Kinematics {
  double accel = 0.0;  ///< a_SI / c, 1/s
  double z = 1.0;      ///< z_SI / c, s

  double az() const { return accel * z; }
  double w0z(double omega0) const { return omega0 * z; }
};

struct NaturalInputs {
  Kinematics kin;
  double omega0;
};

struct SiInputs {
  double a_si;
  double z_si;
  double omega0;
};

/// SI (m/s^2, m, rad/s) to natural units. Throws DomainError naming the field.
NaturalInputs to_natural(double a_si, double z_si, double omega0);
SiInputs to_si(const NaturalInputs& in);

/// Checks p_i >= 0 and sum = 1 within 1e-9. Throws ValidationError.
Polarization validate_polarization(double px, double py, double pz);

/// Validates an atom/kinematics pair already in natural units.
void validate(const AtomSpec& atom, const Kinematics& kin);

}  // namespace accelshift
