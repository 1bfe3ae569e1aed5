#include "accelshift/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "accelshift/asymptotic.hpp"
#include "accelshift/errors.hpp"
#include "accelshift/shift.hpp"

namespace accelshift {

void SweepConfig::validate() const {
  if (!std::isfinite(from) || !std::isfinite(to)) throw DomainError("range", "bounds must be finite");
  if (!(from < to)) throw DomainError("range", "from must be < to");
  if (points < 2) throw DomainError("points", "need at least 2 points");
  if (spacing == Spacing::Log && !(from > 0)) throw DomainError("range", "log spacing needs from > 0");
  if (variable == SweepVariable::Z && !(from > 0)) throw DomainError("range", "distance must be > 0");
  if (variable == SweepVariable::A && from < 0) throw DomainError("range", "acceleration must be >= 0");
  if (!(omega0 > 0)) throw DomainError("omega0", "must be > 0");
  validate_polarization(pol.px, pol.py, pol.pz);
  settings.validate();
}

std::vector<double> SweepConfig::grid() const {
  validate();
  std::vector<double> g(static_cast<std::size_t>(points));
  const double n = points - 1;
  for (int i = 0; i < points; ++i) {
    if (spacing == Spacing::Linear)
      g[i] = from + (to - from) * (i / n);
    else
      g[i] = std::exp(std::log(from) + (std::log(to) - std::log(from)) * (i / n));
  }
  g.front() = from;
  g.back() = to;
  return g;
}

SweepRow evaluate_row(double a_si, double z_si, double omega0, const Polarization& pol,
                      const QuadratureSettings& settings, double strictness) {
  SweepRow row;
  row.a_si = a_si;
  row.z_si = z_si;
  row.omega0 = omega0;
  try {
    const NaturalInputs nat = to_natural(a_si, z_si, omega0);
    row.az = nat.kin.az();
    row.w0z = nat.kin.w0z(omega0);
    const AtomSpec atom{omega0, pol};
    row.regime = std::string(to_string(classify(omega0, nat.kin.accel, nat.kin.z, strictness).regime));
    const ShiftBreakdown accel = shift_total(atom, nat.kin, settings);
    row.total_reduced = accel.total_reduced;
    row.vf_reduced = accel.vf_reduced;
    row.rr_reduced = accel.rr_reduced;
    row.bracket = accel.bracket;
    row.err_est = accel.err_est;
    const ShiftBreakdown still =
        nat.kin.accel == 0.0 ? accel : shift_total(atom, Kinematics{0.0, nat.kin.z}, settings);
    if (still.total_reduced != 0.0 && std::abs(still.total_reduced) >= 1e3 * still.err_est)
      row.ratio_to_static = accel.total_reduced / still.total_reduced;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, int threads) {
  const std::vector<double> g = config.grid();
  std::vector<SweepRow> rows(g.size());
  const double scale = config.units == UnitMode::SI ? 1.0 : kSpeedOfLight;

  auto eval = [&](std::size_t i) {
    // Rows are always evaluated from SI values so the printed row reproduces
    // the evaluated point exactly.
    const double swept = g[i] * scale;
    const double fixed = config.fixed * scale;
    const double a_si = config.variable == SweepVariable::A ? swept : fixed;
    const double z_si = config.variable == SweepVariable::Z ? swept : fixed;
    rows[i] = evaluate_row(a_si, z_si, config.omega0, config.pol, config.settings, config.strictness);
  };

  const int n_threads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(1, g.size())));
  if (n_threads == 1) {
    for (std::size_t i = 0; i < g.size(); ++i) eval(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < g.size(); i = next++) eval(i);
      });
  }
  return rows;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

namespace {

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  return s;
}

}  // namespace

std::string csv_line(const SweepRow& r) {
  std::string out;
  auto num = [&](double v) {
    out += format_number(v);
    out += ',';
  };
  num(r.z_si);
  num(r.a_si);
  num(r.omega0);
  if (r.error.empty()) {
    num(r.az);
    num(r.w0z);
    num(r.total_reduced);
    num(r.vf_reduced);
    num(r.rr_reduced);
    num(r.bracket);
    out += r.regime + ',';
    out += r.ratio_to_static ? format_number(*r.ratio_to_static) : std::string("NA");
    out += ',';
    num(r.err_est);
  } else {
    out += "NA,NA,NA,NA,NA,NA,";
    out += (r.regime.empty() ? std::string("NA") : r.regime) + ",NA,NA,";
  }
  out += sanitize(r.error);
  return out;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : rows) out << csv_line(r) << '\n';
}

}  // namespace accelshift
