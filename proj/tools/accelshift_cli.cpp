// accelshift command-line front end.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "accelshift/asymptotic.hpp"
#include "accelshift/errors.hpp"
#include "accelshift/oracle.hpp"
#include "accelshift/shift.hpp"
#include "accelshift/structfun.hpp"
#include "accelshift/sweep.hpp"
#include "accelshift/units.hpp"

#ifndef ACCELSHIFT_VERSION
#define ACCELSHIFT_VERSION "unknown"
#endif

using namespace accelshift;
using namespace accelshift::oracle;
using nlohmann::json;

namespace {

enum Exit : int {
  kOk = 0,
  kSelftestFailed = 1,
  kBadInput = 2,
  kNumerical = 3,
  kUnwritable = 4,
  kRowFailed = 5,
};

struct PointOpts {
  double omega0 = 1e15;
  double accel = 0.0;
  double z = 1e-8;
  std::string units = "si";
  std::string pol = "1/3";
  std::string format = "text";
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  double strictness = 10.0;
  std::string config;
};

struct ScanOpts {
  PointOpts p;
  std::string var = "z";
  double from = 0.0;
  double to = 0.0;
  int points = 2;
  std::string spacing = "log";
  std::string out;
  std::string meta;
  int threads = 1;
};

struct SelftestOpts {
  std::vector<std::string> skip;
  double xz_multiplicity = 1.0;
  std::string json_out;
  std::string config;
};

Polarization parse_pol(const std::string& s) {
  if (s == "1/3" || s == "iso" || s == "isotropic") return Polarization{};
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("pol: not a number: '" + item + "'");
    }
  }
  if (v.size() != 3) throw ValidationError("pol: expected px,py,pz");
  return validate_polarization(v[0], v[1], v[2]);
}

QuadratureSettings settings_from(const PointOpts& p) {
  QuadratureSettings s;
  s.rel_tol = p.rel_tol;
  s.max_subdivisions = p.max_subdivisions;
  s.validate();
  return s;
}

UnitMode parse_units(const std::string& u) { return u == "natural" ? UnitMode::Natural : UnitMode::SI; }

struct Point {
  AtomSpec atom;
  Kinematics kin;
  double a_si = 0.0;
  double z_si = 0.0;
};

Point resolve(const PointOpts& p) {
  Point pt;
  pt.atom = AtomSpec{p.omega0, parse_pol(p.pol)};
  if (parse_units(p.units) == UnitMode::SI) {
    const NaturalInputs n = to_natural(p.accel, p.z, p.omega0);
    pt.kin = n.kin;
    pt.a_si = p.accel;
    pt.z_si = p.z;
  } else {
    pt.kin = Kinematics{p.accel, p.z};
    validate(pt.atom, pt.kin);
    const SiInputs si = to_si(NaturalInputs{pt.kin, p.omega0});
    pt.a_si = si.a_si;
    pt.z_si = si.z_si;
  }
  return pt;
}

void add_point_options(CLI::App* sub, PointOpts& p) {
  sub->add_option("--omega0", p.omega0, "transition angular frequency (rad/s in SI, 1/s natural)");
  sub->add_option("--accel", p.accel, "proper acceleration (m/s^2 in SI)");
  sub->add_option("--z", p.z, "distance to the mirror (m in SI)");
  sub->add_option("--units", p.units)->check(CLI::IsMember({"si", "natural"}));
  sub->add_option("--pol", p.pol, "px,py,pz (default isotropic)");
  sub->add_option("--format", p.format)->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--rel-tol", p.rel_tol, "quadrature relative tolerance");
  sub->add_option("--max-subdivisions", p.max_subdivisions, "quadrature panel budget");
  sub->add_option("--strictness", p.strictness, "regime separation factor");
  sub->add_option("--config", p.config, "flat key=value file; flags override it");
}

std::string num(double v) { return format_number(v); }

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string("NA"); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json settings_json(const QuadratureSettings& s) {
  return {{"rel_tol", s.rel_tol},
          {"abs_tol", s.abs_tol},
          {"max_subdivisions", s.max_subdivisions},
          {"small_a_threshold", s.small_a_threshold}};
}

json point_json(const Point& pt) {
  return {{"omega0", pt.atom.omega0},
          {"a_si", pt.a_si},
          {"z_si", pt.z_si},
          {"a", pt.kin.accel},
          {"z", pt.kin.z},
          {"az", pt.kin.az()},
          {"w0z", pt.kin.w0z(pt.atom.omega0)},
          {"pol", {pt.atom.pol.px, pt.atom.pol.py, pt.atom.pol.pz}}};
}

// -- shift --------------------------------------------------------------

int cmd_shift(const PointOpts& p) {
  const Point pt = resolve(p);
  const QuadratureSettings s = settings_from(p);
  const RegimeInfo reg = classify(pt.atom.omega0, pt.kin.accel, pt.kin.z, p.strictness);
  const ShiftBreakdown b = shift_total(pt.atom, pt.kin, s);

  if (p.format == "csv") {
    const ComparatorResult cmp = ratios(pt.atom, pt.kin, s);
    SweepRow row;
    row.z_si = pt.z_si;
    row.a_si = pt.a_si;
    row.omega0 = pt.atom.omega0;
    row.az = pt.kin.az();
    row.w0z = pt.kin.w0z(pt.atom.omega0);
    row.total_reduced = b.total_reduced;
    row.vf_reduced = b.vf_reduced;
    row.rr_reduced = b.rr_reduced;
    row.bracket = b.bracket;
    row.regime = std::string(to_string(reg.regime));
    row.ratio_to_static = cmp.ratio_to_static;
    row.err_est = b.err_est;
    std::cout << kCsvHeader << '\n' << csv_line(row) << '\n';
    return kOk;
  }

  if (p.format == "json") {
    json comps = json::object();
    for (Component c : kComponents) {
      const auto i = static_cast<std::size_t>(c);
      comps[std::string(to_string(c))] = {{"f", b.stat.f[i]},
                                          {"g", b.stat.g[i]},
                                          {"g_err", b.stat.g_err[i]},
                                          {"vf", b.per_component[i].vf},
                                          {"rr", b.per_component[i].rr},
                                          {"total", b.per_component[i].total}};
    }
    json out = {{"input", point_json(pt)},
                {"regime", to_string(reg.regime)},
                {"band", to_string(reg.band)},
                {"margin", reg.margin},
                {"vf_reduced", b.vf_reduced},
                {"rr_reduced", b.rr_reduced},
                {"total_reduced", b.total_reduced},
                {"bracket", b.bracket},
                {"err_est", b.err_est},
                {"nbar2", b.stat.nbar2},
                {"components", comps},
                {"settings", settings_json(s)}};
    std::cout << out.dump(2) << '\n';
    return kOk;
  }

  std::cout << "omega0        " << num(pt.atom.omega0) << '\n'
            << "a_si          " << num(pt.a_si) << '\n'
            << "z_si          " << num(pt.z_si) << '\n'
            << "a/omega0      " << num(reg.a_over_w0) << '\n'
            << "az            " << num(reg.az) << '\n'
            << "omega0 z      " << num(reg.w0z) << '\n'
            << "regime        " << to_string(reg.regime) << " (" << to_string(reg.band) << ")\n"
            << "vf_reduced    " << num(b.vf_reduced) << '\n'
            << "rr_reduced    " << num(b.rr_reduced) << '\n'
            << "total_reduced " << num(b.total_reduced) << '\n'
            << "bracket       " << num(b.bracket) << '\n'
            << "err_est       " << num(b.err_est) << '\n'
            << "nbar2         " << num(b.stat.nbar2) << '\n'
            << "\ncomp  f                        g                        g_err\n";
  for (Component c : kComponents) {
    const auto i = static_cast<std::size_t>(c);
    std::printf("%-5s %-24s %-24s %s\n", std::string(to_string(c)).c_str(), num(b.stat.f[i]).c_str(),
                num(b.stat.g[i]).c_str(), num(b.stat.g_err[i]).c_str());
  }
  return kOk;
}

// -- regime -------------------------------------------------------------

constexpr Regime kAllRegimes[] = {Regime::LowAShort,   Regime::LowAIntermediate,     Regime::LowALong,
                                  Regime::HighAShort,  Regime::HighAFarIntermediate, Regime::HighAFarLong,
                                  Regime::NearResNear, Regime::NearResFar};

int cmd_regime(const PointOpts& p) {
  const Point pt = resolve(p);
  const QuadratureSettings s = settings_from(p);
  const RegimeInfo reg = classify(pt.atom.omega0, pt.kin.accel, pt.kin.z, p.strictness);
  std::optional<AsymptoteReport> rep;
  if (reg.regime != Regime::Ambiguous) rep = compare(reg.regime, pt.atom, pt.kin, s);

  json margins = json::object();
  for (Regime r : kAllRegimes)
    margins[std::string(to_string(r))] = regime_margin(r, reg.a_over_w0, reg.az, reg.w0z);

  if (p.format == "json") {
    json out = {{"input", point_json(pt)},
                {"regime", to_string(reg.regime)},
                {"band", to_string(reg.band)},
                {"margin", reg.margin},
                {"strictness", p.strictness},
                {"margins", margins}};
    if (rep) {
      out["asymptote"] = {{"vf", opt_json(rep->asymptote.vf)},
                          {"rr", opt_json(rep->asymptote.rr)},
                          {"total", rep->asymptote.total},
                          {"generalized_planck_factor", rep->asymptote.generalized_planck_factor},
                          {"dominance_indeterminate", rep->asymptote.dominance_indeterminate},
                          {"log_phase", opt_json(rep->asymptote.log_phase)}};
      out["exact"] = {{"vf", rep->exact_vf}, {"rr", rep->exact_rr}, {"total", rep->exact_total}};
      out["rel_deviation"] = rep->rel_deviation;
    }
    std::cout << out.dump(2) << '\n';
    return kOk;
  }
  if (p.format == "csv") {
    std::cout << "regime,band,margin,a_over_w0,az,w0z,asymptote_total,exact_total,rel_deviation\n"
              << to_string(reg.regime) << ',' << to_string(reg.band) << ',' << num(reg.margin) << ','
              << num(reg.a_over_w0) << ',' << num(reg.az) << ',' << num(reg.w0z) << ','
              << (rep ? num(rep->asymptote.total) : "NA") << ',' << (rep ? num(rep->exact_total) : "NA")
              << ',' << (rep ? num(rep->rel_deviation) : "NA") << '\n';
    return kOk;
  }
  std::cout << "regime        " << to_string(reg.regime) << '\n'
            << "band          " << to_string(reg.band) << '\n'
            << "margin        " << num(reg.margin) << " (strictness " << num(p.strictness) << ")\n"
            << "a/omega0      " << num(reg.a_over_w0) << '\n'
            << "az            " << num(reg.az) << '\n'
            << "omega0 z      " << num(reg.w0z) << '\n';
  if (rep) {
    std::cout << "asymptote vf  " << opt_num(rep->asymptote.vf) << '\n'
              << "asymptote rr  " << opt_num(rep->asymptote.rr) << '\n'
              << "asymptote     " << num(rep->asymptote.total) << '\n'
              << "exact         " << num(rep->exact_total) << '\n'
              << "rel_deviation " << num(rep->rel_deviation) << '\n';
    if (rep->asymptote.dominance_indeterminate) std::cout << "note          vf/rr dominance indeterminate\n";
    if (rep->asymptote.generalized_planck_factor) std::cout << "note          generalized Planck factor\n";
  } else {
    std::cout << "asymptote     none (no regime reaches the strictness margin)\n";
  }
  std::cout << "\nmargins\n";
  for (auto& [k, v] : margins.items()) std::printf("  %-24s %s\n", k.c_str(), num(v.get<double>()).c_str());
  return kOk;
}

// -- ratio --------------------------------------------------------------

int cmd_ratio(const PointOpts& p) {
  const Point pt = resolve(p);
  const QuadratureSettings s = settings_from(p);
  const ComparatorResult r = ratios(pt.atom, pt.kin, s);
  const double temperature = pt.kin.accel / (2.0 * 3.14159265358979323846);
  if (p.format == "json") {
    json out = {{"input", point_json(pt)},
                {"accel_total", r.accel_total},
                {"static_total", r.static_total},
                {"ratio_to_static", opt_json(r.ratio_to_static)},
                {"unruh_temperature", temperature},
                {"thermal_total", r.thermal.value},
                {"thermal_valid", r.thermal.valid},
                {"ratio_thermal_to_accel", opt_json(r.ratio_thermal_to_accel)}};
    std::cout << out.dump(2) << '\n';
  } else if (p.format == "csv") {
    std::cout << "accel_total,static_total,ratio_to_static,thermal_total,thermal_valid,ratio_thermal_to_accel\n"
              << num(r.accel_total) << ',' << num(r.static_total) << ',' << opt_num(r.ratio_to_static) << ','
              << num(r.thermal.value) << ',' << (r.thermal.valid ? "true" : "false") << ','
              << opt_num(r.ratio_thermal_to_accel) << '\n';
  } else {
    std::cout << "accel_total            " << num(r.accel_total) << '\n'
              << "static_total           " << num(r.static_total) << '\n'
              << "ratio_to_static        " << opt_num(r.ratio_to_static) << '\n'
              << "unruh_temperature      " << num(temperature) << '\n'
              << "thermal_total          " << num(r.thermal.value) << (r.thermal.valid ? "" : " (outside regime)")
              << '\n'
              << "ratio_thermal_to_accel " << opt_num(r.ratio_thermal_to_accel) << '\n';
  }
  return kOk;
}

// -- scan ---------------------------------------------------------------

int cmd_scan(const ScanOpts& o, const std::vector<std::string>& argv_copy) {
  SweepConfig cfg;
  cfg.variable = o.var == "a" ? SweepVariable::A : SweepVariable::Z;
  cfg.from = o.from;
  cfg.to = o.to;
  cfg.points = o.points;
  cfg.spacing = o.spacing == "linear" ? Spacing::Linear : Spacing::Log;
  cfg.units = parse_units(o.p.units);
  cfg.omega0 = o.p.omega0;
  cfg.fixed = cfg.variable == SweepVariable::Z ? o.p.accel : o.p.z;
  cfg.pol = parse_pol(o.p.pol);
  cfg.settings = settings_from(o.p);
  cfg.strictness = o.p.strictness;
  cfg.validate();

  std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << o.out << '\n';
    return kUnwritable;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<SweepRow> rows = run_sweep(cfg, o.threads);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_csv(out, rows);
  out.close();
  if (!out) {
    std::cerr << "error: failed writing " << o.out << '\n';
    return kUnwritable;
  }

  std::size_t failed = 0;
  for (const SweepRow& r : rows) failed += r.error.empty() ? 0 : 1;

  const std::string meta_path = o.meta.empty() ? o.out + ".meta.json" : o.meta;
  json meta = {{"command_line", argv_copy},
               {"version", ACCELSHIFT_VERSION},
               {"settings",
                {{"var", o.var},
                 {"from", o.from},
                 {"to", o.to},
                 {"points", o.points},
                 {"spacing", o.spacing},
                 {"units", o.p.units},
                 {"omega0", o.p.omega0},
                 {"fixed", cfg.fixed},
                 {"pol", {cfg.pol.px, cfg.pol.py, cfg.pol.pz}},
                 {"strictness", o.p.strictness},
                 {"threads", o.threads},
                 {"config", o.p.config},
                 {"quadrature", settings_json(cfg.settings)}}},
               {"rows", rows.size()},
               {"failed_rows", failed},
               {"wall_time_s", wall}};
  std::ofstream mf(meta_path, std::ios::binary | std::ios::trunc);
  if (!mf || !(mf << meta.dump(2) << '\n')) {
    std::cerr << "error: cannot write " << meta_path << '\n';
    return kUnwritable;
  }
  if (failed) {
    std::cerr << failed << " of " << rows.size() << " rows failed; see the error column\n";
    return kRowFailed;
  }
  return kOk;
}

// -- selftest -----------------------------------------------------------

struct CheckLine {
  std::string group;
  std::string name;
  std::string detail;
  bool passed = false;
};

int cmd_selftest(const SelftestOpts& o) {
  auto skipped = [&](const std::string& g) {
    return std::find(o.skip.begin(), o.skip.end(), g) != o.skip.end();
  };
  std::vector<CheckLine> lines;
  json report = json::object();
  const auto t0 = std::chrono::steady_clock::now();

  if (!skipped("dual")) {
    struct P {
      double w0, z, a;
    };
    // Period-reduced, small-a direct, near-resonance and static points.
    const P pts[] = {{1.0, 0.5, 2.0}, {1.0, 1.0, 1.0}, {1.0, 0.05, 20.0}, {1.0, 10.0, 0.1}, {1.0, 1.0, 0.0}};
    json arr = json::array();
    for (const P& p : pts)
      for (Component c : kComponents) {
        if (p.a == 0.0 && c == Component::XZ) continue;
        CheckLine l{"dual", std::string(to_string(c)) + " (w0=" + short_num(p.w0) + ", z=" + short_num(p.z) +
                                ", a=" + short_num(p.a) + ")", "", false};
        try {
          const GPathComparison r = compare_g_paths(c, p.w0, p.z, p.a, 1e-7);
          l.passed = r.passed;
          l.detail = "rel_diff " + num(r.rel_diff);
          arr.push_back(to_json(r));
        } catch (const std::exception& e) {
          l.detail = e.what();
        }
        lines.push_back(l);
      }
    report["dual"] = arr;
  }

  if (!skipped("reduction")) {
    CheckLine l{"reduction", "isotropic_reduction_check (w0=1, z=1e-3, a=1e-2)", "", false};
    try {
      const IsotropicReductionReport r = isotropic_reduction_check(1.0, 1e-3, 1e-2, o.xz_multiplicity);
      l.passed = r.passed;
      l.detail = "lead " + num(r.lead_rel_err) + ", accel " + num(r.accel_rel_err);
      report["reduction"] = to_json(r);
    } catch (const DesignDecisionViolation& e) {
      l.detail = e.what();
      report["reduction"] = to_json(e.report());
    } catch (const std::exception& e) {
      l.detail = e.what();
    }
    lines.push_back(l);
  }

  if (!skipped("limits")) {
    json arr = json::array();
    try {
      for (const LimitCheck& c : analytic_limits()) {
        lines.push_back({"limits", c.name, "value " + num(c.value) + " vs " + num(c.expected), c.passed});
        arr.push_back(to_json(c));
      }
    } catch (const std::exception& e) {
      lines.push_back({"limits", "analytic_limits", e.what(), false});
    }
    report["limits"] = arr;
  }

  if (!skipped("epsilon")) {
    struct P {
      Component c;
      double w0, z, a;
    };
    const P pts[] = {{Component::XX, 1.0, 1.0, 1.0}, {Component::YY, 1.0, 0.5, 2.0}, {Component::ZZ, 1.0, 1.0, 0.5}};
    json arr = json::array();
    const Deadline deadline = Deadline::after(std::chrono::seconds(90));
    for (const P& p : pts) {
      CheckLine l{"epsilon", std::string(to_string(p.c)) + " (w0=" + short_num(p.w0) + ", z=" + short_num(p.z) +
                                 ", a=" + short_num(p.a) + ")", "", false};
      try {
        const EpsilonReport r = rr_epsilon_regulated(p.c, p.w0, p.z, p.a, {}, deadline);
        l.passed = r.conclusive && r.rel_err_extrapolated <= 0.01;
        l.detail = "rel_err " + num(r.rel_err_extrapolated) + (r.conclusive ? "" : " (inconclusive)");
        arr.push_back(to_json(r));
      } catch (const std::exception& e) {
        l.detail = e.what();
      }
      lines.push_back(l);
    }
    report["epsilon"] = arr;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t failed = 0;
  for (const CheckLine& l : lines) {
    failed += l.passed ? 0 : 1;
    std::printf("%-4s %-10s %-48s %s\n", l.passed ? "PASS" : "FAIL", l.group.c_str(), l.name.c_str(),
                l.detail.c_str());
  }
  std::printf("%zu checks, %zu failed, %.2f s\n", lines.size(), failed, wall);
  if (!o.json_out.empty()) {
    report["wall_time_s"] = wall;
    report["failed"] = failed;
    std::ofstream jf(o.json_out, std::ios::binary | std::ios::trunc);
    if (!jf || !(jf << report.dump(2) << '\n')) {
      std::cerr << "error: cannot write " << o.json_out << '\n';
      return kUnwritable;
    }
  }
  return failed ? kSelftestFailed : kOk;
}

// -- config injection ---------------------------------------------------

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Reads key=value lines and returns them as "--key value" tokens.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot read " + path);
  std::vector<std::string> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config: line " + std::to_string(n) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") throw ValidationError("config: line " + std::to_string(n) + ": bad key");
    out.push_back("--" + key);
    out.push_back(val);
  }
  return out;
}

// File tokens go right after the subcommand so later command-line flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  static const std::vector<std::string> subs = {"shift", "scan", "regime", "ratio", "selftest"};
  std::size_t at = 1;
  for (std::size_t i = 1; i < args.size(); ++i)
    if (std::find(subs.begin(), subs.end(), args[i]) != subs.end()) {
      at = i + 1;
      break;
    }
  std::vector<std::string> out(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(at));
  for (std::string& t : config_tokens(*path)) out.push_back(std::move(t));
  out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(at), args.end());
  return out;
}

int default_threads() {
  if (const char* env = std::getenv("ACCELSHIFT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring ACCELSHIFT_THREADS=" << env << '\n';
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> original(argv, argv + argc);
  std::vector<std::string> args;
  try {
    args = expand_config(original);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }

  CLI::App app{"Ground-state shift of a uniformly accelerated atom near a reflecting boundary", "accelshift"};
  app.set_version_flag("--version", ACCELSHIFT_VERSION);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  PointOpts shift_o, regime_o, ratio_o;
  ScanOpts scan_o;
  scan_o.threads = default_threads();
  SelftestOpts self_o;

  auto* shift = app.add_subcommand("shift", "evaluate the shift at one point");
  add_point_options(shift, shift_o);
  auto* regime = app.add_subcommand("regime", "classify a point and compare with its asymptote");
  add_point_options(regime, regime_o);
  auto* ratio = app.add_subcommand("ratio", "ratio to the static atom and to the thermal comparator");
  add_point_options(ratio, ratio_o);

  auto* scan = app.add_subcommand("scan", "sweep z or a and write CSV");
  add_point_options(scan, scan_o.p);
  scan->add_option("--var", scan_o.var)->check(CLI::IsMember({"z", "a"}));
  scan->add_option("--from", scan_o.from)->required();
  scan->add_option("--to", scan_o.to)->required();
  scan->add_option("--points", scan_o.points)->required();
  scan->add_option("--spacing", scan_o.spacing)->check(CLI::IsMember({"linear", "log"}));
  scan->add_option("--out", scan_o.out)->required();
  scan->add_option("--meta", scan_o.meta, "sidecar JSON path (default <out>.meta.json)");
  scan->add_option("--threads", scan_o.threads, "row-parallel workers (env ACCELSHIFT_THREADS)")
      ->check(CLI::PositiveNumber);

  auto* selftest = app.add_subcommand("selftest", "run the oracle suite");
  selftest->add_option("--skip", self_o.skip, "skip a group: dual, reduction, limits, epsilon")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->check(CLI::IsMember({"dual", "reduction", "limits", "epsilon"}));
  selftest->add_option("--xz-multiplicity", self_o.xz_multiplicity,
                       "xz multiplicity used by the reduction check (mutation testing)");
  selftest->add_option("--json", self_o.json_out, "write the full report as JSON");
  selftest->add_option("--config", self_o.config, "flat key=value file; flags override it");

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*shift) return cmd_shift(shift_o);
    if (*regime) return cmd_regime(regime_o);
    if (*ratio) return cmd_ratio(ratio_o);
    if (*scan) return cmd_scan(scan_o, original);
    if (*selftest) return cmd_selftest(self_o);
  } catch (const AccuracyError& e) {
    std::cerr << "error: " << e.what() << " (best " << e.best_estimate() << ", err " << e.err_est() << ")\n";
    return kNumerical;
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const UnsupportedRegime& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
