#include "accelshift/structfun.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "accelshift/errors.hpp"
#include "accelshift/quadrature.hpp"

namespace accelshift {

using std::numbers::pi;

std::string_view to_string(Component c) {
  switch (c) {
    case Component::XX: return "xx";
    case Component::YY: return "yy";
    case Component::ZZ: return "zz";
    case Component::XZ: return "xz";
  }
  return "?";
}

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw DomainError("settings", "tolerances must be positive");
  if (max_subdivisions < 50) throw DomainError("settings", "max_subdivisions must be >= 50");
  if (!(small_a_threshold > 0)) throw DomainError("settings", "small_a_threshold must be positive");
}

namespace {

void check_args(double omega0, double z, double a) {
  if (!std::isfinite(omega0) || omega0 <= 0) throw DomainError("omega0", "must be finite and > 0");
  if (!std::isfinite(z) || z <= 0) throw DomainError("z", "must be finite and > 0");
  if (!std::isfinite(a) || a < 0) throw DomainError("accel", "must be finite and >= 0");
}

// The g integrals are evaluated in t = u / (2z). With b = a z and
// s(t) = sin(b t) / b the kernels become O(1) functions of t, the peak at
// u = 0 has unit width, and the period is pi / b. Decay rate is 2 omega0 z.
struct Kernel {
  Component comp;
  double b;       // a z, zero for the static limit
  double lambda;  // 2 omega0 z

  double operator()(double t) const {
    const double x = b * t;
    double s, c2;
    if (x < 1e-8) {
      s = t * (1.0 - x * x / 6.0);
      c2 = 1.0 - 2.0 * x * x;
    } else {
      s = std::sin(x) / b;
      c2 = std::cos(2.0 * x);
    }
    const double s2 = s * s;
    const double d = s2 + 1.0;
    const double d3 = d * d * d;
    double num = 0.0;
    switch (comp) {
      case Component::XX: num = s2 - 1.0; break;
      case Component::YY: num = s2 - c2; break;
      case Component::ZZ: num = -(s2 + c2); break;
      case Component::XZ: num = s2; break;
    }
    return num / d3 * std::exp(-lambda * t);
  }
};

// Prefactor mapping the dimensionless t-integral back to g_ij.
double prefactor(Component c, double z, double a) {
  if (c == Component::XZ) return 16.0 * a / (pi * z * z);
  return 8.0 / (pi * z * z * z);
}

// Decade-spaced seeds from 1 up to `limit`.
void push_decades(std::vector<double>& pts, double limit) {
  for (double t = 1.0; t < limit; t *= 10.0) pts.push_back(t);
}

quad::Result run(const Kernel& k, const std::vector<double>& pts, const QuadratureSettings& s) {
  return quad::integrate(k, std::span<const double>(pts),
                         quad::Options{s.rel_tol, s.abs_tol, s.max_subdivisions});
}

[[noreturn]] void accuracy_failure(Component c, double best, double err) {
  throw AccuracyError("g_" + std::string(to_string(c)) + ": tolerance not reached", best, err);
}

// Cut-off where exp(-lambda t) * (lambda t)^2 falls below rel_tol; the
// quadratic allowance covers the xz kernel, which starts as t^2.
double truncation_point(double lambda, double rel_tol) {
  const double l = std::log(1.0 / rel_tol);
  return (l + 2.0 * std::log(l) + 1.0) / lambda;
}

GValue integrate_direct(Component c, double b, double lambda, double t_end,
                        const QuadratureSettings& s) {
  const Kernel k{c, b, lambda};
  std::vector<double> pts{0.0};
  push_decades(pts, t_end);
  pts.push_back(t_end);
  const auto r = run(k, pts, s);
  if (!r.converged) accuracy_failure(c, r.value, r.abs_error);
  return {r.value, r.abs_error};
}

}  // namespace

double phase(double omega0, double z, double a) {
  if (a == 0.0) return 2.0 * omega0 * z;
  const double x = a * z;
  if (x < 1e-8) return 2.0 * omega0 * z * (1.0 - x * x / 6.0);
  return 2.0 * omega0 / a * std::asinh(x);
}

double f_component(Component c, double omega0, double z, double a) {
  check_args(omega0, z, a);
  const double ph = phase(omega0, z, a);
  const double cs = std::cos(ph), sn = std::sin(ph);
  const double b2 = a * a * z * z;
  const double q = 1.0 + b2;
  const double sq = std::sqrt(q);
  const double w2z2 = omega0 * omega0 * z * z;
  const double z2 = z * z, z3 = z2 * z;
  switch (c) {
    case Component::XX:
      return (4.0 * w2z2 * q - 4.0 * b2 * b2 - 2.0 * b2 - 1.0) / (z3 * q * q * sq) * cs -
             2.0 * omega0 * (1.0 + 4.0 * b2) / (z2 * q * q) * sn;
    case Component::YY:
      return (4.0 * w2z2 * q - 1.0) / (z3 * q * sq) * cs - 2.0 * omega0 * (1.0 + 2.0 * b2) / (z2 * q) * sn;
    case Component::ZZ:
      return -(2.0 + b2 * (5.0 - 4.0 * w2z2 * q)) / (z3 * q * q * sq) * cs -
             2.0 * omega0 * (2.0 + b2 + 2.0 * b2 * b2) / (z2 * q * q) * sn;
    case Component::XZ:
      return a * (1.0 + 4.0 * b2 + 4.0 * w2z2 * q) / (z2 * q * q * sq) * cs +
             2.0 * a * omega0 * (1.0 - 2.0 * b2) / (z * q * q) * sn;
  }
  return 0.0;
}

GValue g_component(Component c, double omega0, double z, double a, const QuadratureSettings& s) {
  check_args(omega0, z, a);
  if (a <= 0.0) throw DomainError("accel", "g_component needs a > 0; use g_static_limit");
  s.validate();

  const double b = a * z;
  const double lambda = 2.0 * omega0 * z;
  const double period = pi / b;               // in t
  const double decay = 2.0 * pi * omega0 / a;  // lambda * period
  const double pref = prefactor(c, z, a);

  if (decay > s.small_a_threshold) {
    // One period already covers the exponential decay.
    const double t_end = std::min(truncation_point(lambda, s.rel_tol), period);
    const GValue v = integrate_direct(c, b, lambda, t_end, s);
    return {pref * v.value, std::abs(pref) * v.err_est};
  }

  // Exact period reduction: the kernel has period pi/b in t, so the
  // half-line integral is the one-period integral over (1 - e^{-decay}).
  std::vector<double> pts{0.0};
  const double half = 0.5 * period;
  if (half > 2.0) {
    std::vector<double> left;
    push_decades(left, half);
    pts.insert(pts.end(), left.begin(), left.end());
    pts.push_back(half);
    for (auto it = left.rbegin(); it != left.rend(); ++it) pts.push_back(period - *it);
  } else {
    pts.push_back(half);
  }
  pts.push_back(period);

  const Kernel k{c, b, lambda};
  const auto r = run(k, pts, s);
  const double geom = 1.0 / -std::expm1(-decay);
  if (!r.converged) accuracy_failure(c, pref * geom * r.value, std::abs(pref) * geom * r.abs_error);
  return {pref * geom * r.value, std::abs(pref) * geom * r.abs_error};
}

GValue g_static_limit(Component c, double omega0, double z, const QuadratureSettings& s) {
  check_args(omega0, z, 0.0);
  s.validate();
  if (c == Component::XZ) return {0.0, 0.0};
  const double lambda = 2.0 * omega0 * z;
  const GValue v = integrate_direct(c, 0.0, lambda, truncation_point(lambda, s.rel_tol), s);
  const double pref = prefactor(c, z, 0.0);
  return {pref * v.value, std::abs(pref) * v.err_est};
}

double thermal_factor(double omega0, double a) {
  if (!std::isfinite(omega0) || omega0 <= 0) throw DomainError("omega0", "must be finite and > 0");
  if (!std::isfinite(a) || a < 0) throw DomainError("accel", "must be finite and >= 0");
  if (a == 0.0) return 0.0;
  return 2.0 / std::expm1(2.0 * pi * omega0 / a);
}

StatFunctions stat_functions(double omega0, double z, double a, const QuadratureSettings& s) {
  check_args(omega0, z, a);
  StatFunctions out;
  out.nbar2 = thermal_factor(omega0, a);
  for (Component c : kComponents) {
    const auto i = static_cast<std::size_t>(c);
    out.f[i] = f_component(c, omega0, z, a);
    const GValue g = a == 0.0 ? g_static_limit(c, omega0, z, s) : g_component(c, omega0, z, a, s);
    out.g[i] = g.value;
    out.g_err[i] = g.err_est;
  }
  return out;
}

}  // namespace accelshift
