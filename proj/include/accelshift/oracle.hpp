#pragma once

// Independent reference evaluations used to pin the main numerical paths:
// plain truncated quadrature of the g integrals, analytic small-parameter
// limits, and the epsilon-regulated pre-residue radiation-reaction integral.
// Everything here integrates with Boost.Math, never with accelshift::quad.

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "accelshift/errors.hpp"
#include "accelshift/structfun.hpp"

namespace accelshift::oracle {

enum class Method { DirectTruncated, PeriodReduced, EpsilonRegulated, AnalyticLimit };

struct OracleConfig {
  /// Finest regulator of the +-i epsilon prescription (natural time units).
  double epsilon = 1e-3;
  /// Truncation of the direct quadrature; 0 selects one from rel_tol.
  double u_max = 0.0;
  double rel_tol = 1e-8;
  /// Period budget of the direct quadrature.
  int max_periods = 2000;
  Method method = Method::DirectTruncated;
};

/// Cooperative deadline for the long-running oracles.
class Deadline {
 public:
  Deadline() = default;
  static Deadline after(std::chrono::duration<double> d) {
    Deadline out;
    out.at_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(d);
    return out;
  }
  bool expired() const { return at_ && std::chrono::steady_clock::now() > *at_; }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

/// g_ij by adaptive Gauss-Kronrod on every period [k T, (k+1) T] up to u_max,
/// summed without geometric resummation. Throws AccuracyError when the
/// number of periods exceeds config.max_periods.
GValue g_direct(Component c, double omega0, double z, double a, const OracleConfig& config = {});

struct GPathComparison {
  Component comp;
  double omega0, z, a;
  double main_value, main_err;
  double direct_value, direct_err;
  double rel_diff;
  bool passed;
};

/// Main-path g_component (or the static limit at a = 0) against g_direct.
/// Passes when the difference is within max(rel_tol |g|, summed err_est).
GPathComparison compare_g_paths(Component c, double omega0, double z, double a, double rel_tol,
                                const QuadratureSettings& settings = {}, const OracleConfig& config = {});

/// int_0^inf cos(omega0 u) Im K(u -+ i eps) du for the pre-residue kernel
/// K = N_ij(u) / [sinh^2(a (u -+ i eps) / 2) - a^2 z^2]^3. sign = +1 selects
/// (u - i eps), -1 selects (u + i eps). As eps -> 0, -(4 a^4 / pi) times the
/// sign = +1 value tends to f_ij.
double rr_epsilon_integral(Component c, double omega0, double z, double a, double eps, int sign = +1,
                           const Deadline& deadline = {});

struct EpsilonReport {
  Component comp;
  double omega0, z, a;
  std::array<double, 3> epsilons{};
  std::array<double, 3> values{};  ///< rr contribution per unit weight at each epsilon
  double extrapolated = 0.0;
  double closed_form = 0.0;  ///< 3 omega0 / (128 pi) f_ij
  double rel_err_finest = 0.0;
  double rel_err_extrapolated = 0.0;
  bool conclusive = false;
  bool timed_out = false;
};

/// Richardson-extrapolated (epsilon -> 0) regulated integral over the ladder
/// {4 eps, 2 eps, eps}. A non-convergent ladder is reported, never hidden.
EpsilonReport rr_epsilon_regulated(Component c, double omega0, double z, double a,
                                   const OracleConfig& config = {}, const Deadline& deadline = {});

struct IsotropicReductionReport {
  double omega0, z, a;
  double xz_multiplicity;
  double lead_coef, lead_expected, lead_rel_err;
  double accel_coef, accel_expected, accel_rel_err;
  bool passed;  ///< both coefficients within 2%
};

class DesignDecisionViolation : public ConsistencyError {
 public:
  DesignDecisionViolation(const std::string& what, IsotropicReductionReport r)
      : ConsistencyError(what), report_(r) {}
  const IsotropicReductionReport& report() const noexcept { return report_; }

 private:
  IsotropicReductionReport report_;
};

/// Extracts the 1/z^3 and a/z^2 coefficients of the isotropic short-distance
/// total from exact evaluations and compares them with 1/8 and 1/32 (in units
/// of omega0 / 4 pi). Requires LOW_A_SHORT. Throws DesignDecisionViolation
/// when either coefficient is off by more than 5%.
IsotropicReductionReport isotropic_reduction_check(double omega0, double z, double a,
                                                   double xz_multiplicity = 1.0,
                                                   const QuadratureSettings& settings = {});

struct LimitCheck {
  std::string name;
  double value;
  double expected;
  double tolerance;  ///< relative
  bool passed;
};

/// Closed integrals behind the small-distance limits, re-derived by
/// quadrature, and the main-path g limits they imply.
std::vector<LimitCheck> analytic_limits(const QuadratureSettings& settings = {});

nlohmann::json to_json(const GPathComparison& r);
nlohmann::json to_json(const EpsilonReport& r);
nlohmann::json to_json(const IsotropicReductionReport& r);
nlohmann::json to_json(const LimitCheck& r);

}  // namespace accelshift::oracle
