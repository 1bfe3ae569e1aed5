#pragma once

// Boundary-dependent statistical functions of the field along the
// accelerated trajectory: the closed-form amplitudes f_ij and the
// Laplace-weighted periodic integrals g_ij, plus the Planck-like factor.

#include <array>
#include <cstddef>
#include <string_view>

namespace accelshift {

enum class Component { XX = 0, YY = 1, ZZ = 2, XZ = 3 };

inline constexpr std::array<Component, 4> kComponents = {Component::XX, Component::YY,
                                                          Component::ZZ, Component::XZ};

std::string_view to_string(Component c);

struct QuadratureSettings {
  double rel_tol = 1e-10;
  /// Absolute floor on the dimensionless integral.
  double abs_tol = 1e-300;
  int max_subdivisions = 2000;
  /// Direct truncated quadrature replaces the period reduction once
  /// 2*pi*omega0/a exceeds this.
  double small_a_threshold = 500.0;

  void validate() const;
};

struct GValue {
  double value = 0.0;
  double err_est = 0.0;
};

struct StatFunctions {
  std::array<double, 4> f{};
  std::array<double, 4> g{};
  std::array<double, 4> g_err{};
  double nbar2 = 0.0;

  double f_of(Component c) const { return f[static_cast<std::size_t>(c)]; }
  double g_of(Component c) const { return g[static_cast<std::size_t>(c)]; }
};

/// Phase (2 omega0 / a) asinh(a z) of the closed forms; 2 omega0 z at a = 0,
/// and a cubic series below a z = 1e-8.
double phase(double omega0, double z, double a);

double f_component(Component c, double omega0, double z, double a);

/// g_ij for a > 0. Throws AccuracyError if the tolerance is not reached.
GValue g_component(Component c, double omega0, double z, double a,
                   const QuadratureSettings& settings = {});

/// a -> 0 limit of g_ij (sin(au/2) -> au/2). The xz entry is identically zero.
GValue g_static_limit(Component c, double omega0, double z,
                      const QuadratureSettings& settings = {});

/// 2 / (exp(2 pi omega0 / a) - 1), zero at a = 0.
double thermal_factor(double omega0, double a);

StatFunctions stat_functions(double omega0, double z, double a,
                             const QuadratureSettings& settings = {});

}  // namespace accelshift
