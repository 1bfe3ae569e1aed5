#include "accelshift/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "accelshift/asymptotic.hpp"
#include "accelshift/shift.hpp"

namespace accelshift::oracle {

using std::numbers::pi;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

namespace {

// The printed integrand of g_ij in the original variable u.
double g_integrand(Component c, double u, double omega0, double z, double a) {
  const double sn = std::sin(0.5 * a * u);
  const double s2 = sn * sn;
  const double b2 = a * a * z * z;
  const double d = s2 + b2;
  const double d3 = d * d * d;
  const double a4 = a * a * a * a;
  double v = 0.0;
  switch (c) {
    case Component::XX: v = 4.0 * a4 / pi * (s2 - b2) / d3; break;
    case Component::YY: v = 4.0 * a4 / pi * (s2 - b2 * std::cos(a * u)) / d3; break;
    case Component::ZZ: v = -4.0 * a4 / pi * (s2 + b2 * std::cos(a * u)) / d3; break;
    case Component::XZ: v = 8.0 * a4 * a * z / pi * s2 / d3; break;
  }
  return v * std::exp(-omega0 * u);
}

// a -> 0 form of the same integrand (sin(au/2) -> au/2), used at a = 0.
double g_static_integrand(Component c, double u, double omega0, double z) {
  const double q = 0.25 * u * u;
  const double d = q + z * z;
  const double d3 = d * d * d;
  switch (c) {
    case Component::XX:
    case Component::YY: return 4.0 / pi * (q - z * z) / d3 * std::exp(-omega0 * u);
    case Component::ZZ: return -4.0 / pi * (q + z * z) / d3 * std::exp(-omega0 * u);
    case Component::XZ: return 0.0;
  }
  return 0.0;
}

double default_u_max(double omega0, double rel_tol) {
  const double l = std::log(1.0 / rel_tol);
  return (l + 2.0 * std::log(l) + 1.0) / omega0;
}

template <class F>
void add_piece(const F& f, double lo, double hi, double tol, double& sum, double& err) {
  if (!(hi > lo)) return;
  double e = 0.0;
  sum += GK::integrate(f, lo, hi, 15, tol, &e);
  err += e;
}

}  // namespace

GValue g_direct(Component c, double omega0, double z, double a, const OracleConfig& config) {
  const double u_max = config.u_max > 0 ? config.u_max : default_u_max(omega0, config.rel_tol);
  if (!(omega0 * u_max >= std::log(1.0 / config.rel_tol)))
    throw DomainError("u_max", "u_max * omega0 must be >= ln(1 / rel_tol)");

  double sum = 0.0, err = 0.0;
  const double tol = config.rel_tol;
  if (a == 0.0) {
    auto f = [&](double u) { return g_static_integrand(c, u, omega0, z); };
    double lo = 0.0;
    for (double edge : {2.0 * z, 20.0 * z, 200.0 * z, u_max}) {
      const double hi = std::min(edge, u_max);
      add_piece(f, lo, hi, tol, sum, err);
      lo = std::max(lo, hi);
    }
    return {sum, err};
  }

  const double period = 2.0 * pi / a;
  const double periods = std::ceil(u_max / period);
  if (periods > config.max_periods)
    throw AccuracyError("g_direct: " + std::to_string(static_cast<long long>(periods)) +
                            " periods exceed the budget",
                        0.0, std::numeric_limits<double>::infinity());

  auto f = [&](double u) { return g_integrand(c, u, omega0, z, a); };
  const double edge = std::min(2.0 * z, 0.25 * period);
  for (long k = 0; k < static_cast<long>(periods); ++k) {
    const double lo = k * period;
    const double cuts[] = {lo, lo + edge, lo + 0.5 * period, lo + period - edge, lo + period};
    for (int i = 0; i < 4; ++i) add_piece(f, std::min(cuts[i], u_max), std::min(cuts[i + 1], u_max), tol, sum, err);
  }
  return {sum, err};
}

GPathComparison compare_g_paths(Component c, double omega0, double z, double a, double rel_tol,
                                const QuadratureSettings& settings, const OracleConfig& config) {
  const GValue main = a == 0.0 ? g_static_limit(c, omega0, z, settings) : g_component(c, omega0, z, a, settings);
  const GValue direct = g_direct(c, omega0, z, a, config);
  GPathComparison r{c, omega0, z, a, main.value, main.err_est, direct.value, direct.err_est, 0.0, false};
  const double diff = std::abs(main.value - direct.value);
  const double scale = std::max(std::abs(main.value), std::abs(direct.value));
  r.rel_diff = scale > 0 ? diff / scale : 0.0;
  r.passed = diff <= std::max(rel_tol * scale, main.err_est + direct.err_est);
  return r;
}

double rr_epsilon_integral(Component c, double omega0, double z, double a, double eps, int sign,
                           const Deadline& deadline) {
  if (!(a > 0)) throw DomainError("accel", "regulated oracle needs a > 0");
  if (!(eps > 0) || !(eps * a < 0.01)) throw DomainError("epsilon", "needs 0 < epsilon * a < 0.01");
  const double b2 = a * a * z * z;
  const double u_star = 2.0 / a * std::asinh(a * z);

  auto f = [&](double u) {
    const double sh = std::sinh(0.5 * a * u);
    const double s2 = sh * sh;
    double num = 0.0;
    switch (c) {
      case Component::XX: num = s2 + b2; break;
      case Component::YY: num = s2 + b2 * std::cosh(a * u); break;
      case Component::ZZ: num = -s2 + b2 * std::cosh(a * u); break;
      case Component::XZ: num = 2.0 * a * z * s2; break;
    }
    const std::complex<double> arg(0.5 * a * u, -0.5 * a * eps * sign);
    const std::complex<double> shc = std::sinh(arg);
    const std::complex<double> d = shc * shc - b2;
    return std::cos(omega0 * u) * (num / (d * d * d)).imag();
  };

  const double u_end = u_star + 60.0 / a;
  std::vector<double> cuts = {0.0,
                              u_star - 50.0 * eps,
                              u_star - 5.0 * eps,
                              u_star,
                              u_star + 5.0 * eps,
                              u_star + 50.0 * eps,
                              u_star + 1.0 / a,
                              u_end};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [](double x) { return x < 0; }), cuts.end());
  if (cuts.front() != 0.0) cuts.insert(cuts.begin(), 0.0);

  double sum = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (deadline.expired()) throw AccuracyError("rr_epsilon_integral: deadline expired", sum, err);
    add_piece(f, cuts[i], cuts[i + 1], 1e-12, sum, err);
  }
  return sum;
}

EpsilonReport rr_epsilon_regulated(Component c, double omega0, double z, double a, const OracleConfig& config,
                                   const Deadline& deadline) {
  EpsilonReport r{};
  r.comp = c;
  r.omega0 = omega0;
  r.z = z;
  r.a = a;
  const double pref = reduced_prefactor(omega0);
  r.closed_form = pref * f_component(c, omega0, z, a);
  r.epsilons = {4.0 * config.epsilon, 2.0 * config.epsilon, config.epsilon};
  try {
    for (int i = 0; i < 3; ++i) r.values[i] = -pref * 4.0 * std::pow(a, 4) / pi * rr_epsilon_integral(c, omega0, z, a, r.epsilons[i], +1, deadline);
  } catch (const AccuracyError&) {
    r.timed_out = deadline.expired();
    r.conclusive = false;
    return r;
  }
  // Leading error is linear in epsilon; two levels of Richardson.
  const double r_coarse = 2.0 * r.values[1] - r.values[0];
  const double r_fine = 2.0 * r.values[2] - r.values[1];
  r.extrapolated = (4.0 * r_fine - r_coarse) / 3.0;
  const double denom = std::abs(r.closed_form);
  r.rel_err_finest = std::abs(r.values[2] - r.closed_form) / denom;
  r.rel_err_extrapolated = std::abs(r.extrapolated - r.closed_form) / denom;
  const bool finite = std::isfinite(r.extrapolated) && std::isfinite(r_coarse) && std::isfinite(r_fine);
  r.conclusive = finite && std::abs(r_fine - r_coarse) <= 0.01 * std::abs(r.extrapolated);
  return r;
}

IsotropicReductionReport isotropic_reduction_check(double omega0, double z, double a, double xz_multiplicity,
                                                   const QuadratureSettings& settings) {
  if (classify(omega0, a, z).regime != Regime::LowAShort)
    throw UnsupportedRegime("isotropic_reduction_check needs a LOW_A_SHORT point");
  const Polarization iso{};
  const double accel_total =
      detail::contract(stat_functions(omega0, z, a, settings), omega0, iso, xz_multiplicity).total_reduced;
  const double static_total =
      detail::contract(stat_functions(omega0, z, 0.0, settings), omega0, iso, xz_multiplicity).total_reduced;

  IsotropicReductionReport r{};
  r.omega0 = omega0;
  r.z = z;
  r.a = a;
  r.xz_multiplicity = xz_multiplicity;
  const double unit = omega0 / (4.0 * pi);
  r.lead_coef = -static_total * z * z * z / unit;
  r.lead_expected = 1.0 / 8.0;
  r.lead_rel_err = std::abs(r.lead_coef - r.lead_expected) / r.lead_expected;
  r.accel_coef = (accel_total - static_total) * z * z / (unit * a);
  r.accel_expected = 1.0 / 32.0;
  r.accel_rel_err = std::abs(r.accel_coef - r.accel_expected) / r.accel_expected;
  r.passed = r.lead_rel_err <= 0.02 && r.accel_rel_err <= 0.02;
  if (r.lead_rel_err > 0.05 || r.accel_rel_err > 0.05)
    throw DesignDecisionViolation("isotropic reduction mismatch: xz multiplicity inconsistent with the "
                                  "closed-form short-distance coefficients",
                                  r);
  return r;
}

std::vector<LimitCheck> analytic_limits(const QuadratureSettings& settings) {
  std::vector<LimitCheck> out;
  auto add = [&](std::string name, double value, double expected, double tol) {
    const double rel = std::abs(value - expected) / std::abs(expected);
    out.push_back({std::move(name), value, expected, tol, rel <= tol});
  };

  boost::math::quadrature::exp_sinh<double> half_line;
  add("int t^2/(t^2+1)^3 = pi/16", half_line.integrate([](double t) {
    const double d = t * t + 1.0;
    return t * t / (d * d * d);
  }), pi / 16.0, 1e-12);
  add("int (t^2-1)/(t^2+1)^3 = -pi/8", half_line.integrate([](double t) {
    const double d = t * t + 1.0;
    return (t * t - 1.0) / (d * d * d);
  }), -pi / 8.0, 1e-12);
  add("int 1/(t^2+1)^2 = pi/4", half_line.integrate([](double t) {
    const double d = t * t + 1.0;
    return 1.0 / (d * d);
  }), pi / 4.0, 1e-12);

  // omega0 z = 1e-6: first corrections are O(omega0 z), below the 1e-4 tolerance.
  const double w = 1.0, z = 1e-6;
  const double z3 = z * z * z;
  add("g_xx_static z^3 -> -1", g_static_limit(Component::XX, w, z, settings).value * z3, -1.0, 1e-4);
  add("g_yy_static z^3 -> -1", g_static_limit(Component::YY, w, z, settings).value * z3, -1.0, 1e-4);
  add("g_zz_static z^3 -> -2", g_static_limit(Component::ZZ, w, z, settings).value * z3, -2.0, 1e-4);
  const double a = 1e-3;
  add("g_xz z^2 / a -> 1", g_component(Component::XZ, w, z, a, settings).value * z * z / a, 1.0, 1e-4);
  return out;
}

nlohmann::json to_json(const GPathComparison& r) {
  return {{"component", to_string(r.comp)}, {"omega0", r.omega0},     {"z", r.z},
          {"a", r.a},                       {"main", r.main_value},   {"main_err", r.main_err},
          {"direct", r.direct_value},       {"direct_err", r.direct_err}, {"rel_diff", r.rel_diff},
          {"passed", r.passed}};
}

nlohmann::json to_json(const EpsilonReport& r) {
  return {{"component", to_string(r.comp)},
          {"omega0", r.omega0},
          {"z", r.z},
          {"a", r.a},
          {"epsilons", r.epsilons},
          {"values", r.values},
          {"extrapolated", r.extrapolated},
          {"closed_form", r.closed_form},
          {"rel_err_finest", r.rel_err_finest},
          {"rel_err_extrapolated", r.rel_err_extrapolated},
          {"conclusive", r.conclusive},
          {"timed_out", r.timed_out}};
}

nlohmann::json to_json(const IsotropicReductionReport& r) {
  return {{"omega0", r.omega0},
          {"z", r.z},
          {"a", r.a},
          {"xz_multiplicity", r.xz_multiplicity},
          {"lead_coef", r.lead_coef},
          {"lead_expected", r.lead_expected},
          {"lead_rel_err", r.lead_rel_err},
          {"accel_coef", r.accel_coef},
          {"accel_expected", r.accel_expected},
          {"accel_rel_err", r.accel_rel_err},
          {"passed", r.passed}};
}

nlohmann::json to_json(const LimitCheck& r) {
  return {{"name", r.name}, {"value", r.value}, {"expected", r.expected}, {"tolerance", r.tolerance},
          {"passed", r.passed}};
}

}  // namespace accelshift::oracle
