#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accelshift/structfun.hpp"
#include "accelshift/units.hpp"

namespace accelshift {

enum class SweepVariable { Z, A };
enum class Spacing { Linear, Log };

struct SweepConfig {
  SweepVariable variable = SweepVariable::Z;
  double from = 0.0;
  double to = 0.0;
  int points = 2;
  Spacing spacing = Spacing::Log;
  UnitMode units = UnitMode::SI;
  double omega0 = 1e15;
  /// Value of the kinematic variable that is not swept, in `units`.
  double fixed = 0.0;
  Polarization pol{};
  QuadratureSettings settings{};
  double strictness = 10.0;

  /// Throws DomainError on from >= to, points < 2, or LOG with from <= 0.
  void validate() const;
  /// Grid values of the swept variable in `units`, endpoints exact.
  std::vector<double> grid() const;
};

struct SweepRow {
  double z_si = 0.0;
  double a_si = 0.0;
  double omega0 = 0.0;
  double az = 0.0;
  double w0z = 0.0;
  double total_reduced = 0.0;
  double vf_reduced = 0.0;
  double rr_reduced = 0.0;
  double bracket = 0.0;
  std::string regime;
  std::optional<double> ratio_to_static;
  double err_est = 0.0;
  /// Empty on success; otherwise the failure message and numeric fields are NA.
  std::string error;
};

/// Frozen header of the scan CSV.
inline constexpr std::string_view kCsvHeader =
    "z_si,a_si,omega0,az,w0z,total_reduced,vf_reduced,rr_reduced,bracket,regime,ratio_to_static,err_est,error";

/// Evaluates one row from SI kinematics; numerical failures land in `error`.
SweepRow evaluate_row(double a_si, double z_si, double omega0, const Polarization& pol,
                      const QuadratureSettings& settings, double strictness = 10.0);

/// Rows in grid order. Rows are independent; `threads` > 1 evaluates them
/// concurrently without changing the result.
std::vector<SweepRow> run_sweep(const SweepConfig& config, int threads = 1);

/// Shortest round-trip-safe formatting with 17 significant digits.
std::string format_number(double v);
std::string csv_line(const SweepRow& row);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace accelshift
