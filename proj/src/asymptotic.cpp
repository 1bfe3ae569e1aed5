#include "accelshift/asymptotic.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>

#include "accelshift/errors.hpp"
#include "accelshift/shift.hpp"

namespace accelshift {

using std::numbers::pi;

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::LowAShort: return "LOW_A_SHORT";
    case Regime::LowAIntermediate: return "LOW_A_INTERMEDIATE";
    case Regime::LowALong: return "LOW_A_LONG";
    case Regime::HighAShort: return "HIGH_A_SHORT";
    case Regime::HighAFarIntermediate: return "HIGH_A_FAR_INTERMEDIATE";
    case Regime::HighAFarLong: return "HIGH_A_FAR_LONG";
    case Regime::NearResNear: return "NEAR_RES_NEAR";
    case Regime::NearResFar: return "NEAR_RES_FAR";
    case Regime::Ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

std::string_view to_string(AccelBand b) {
  switch (b) {
    case AccelBand::Low: return "LOW_A";
    case AccelBand::High: return "HIGH_A";
    case AccelBand::NearResonance: return "NEAR_RES";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inv(double x) { return x == 0.0 ? kInf : 1.0 / x; }

}  // namespace

double regime_margin(Regime r, double ra, double b, double c) {
  switch (r) {
    case Regime::LowAShort: return std::min(inv(ra), inv(c));
    case Regime::LowAIntermediate: return std::min({inv(ra), inv(b), c});
    case Regime::LowALong: return std::min(inv(ra), b);
    case Regime::HighAShort: return std::min(ra, inv(b));
    case Regime::HighAFarIntermediate: return std::min({ra, b, inv(c)});
    case Regime::HighAFarLong: return std::min({ra, b, c});
    case Regime::NearResNear: return inv(c);
    case Regime::NearResFar: return c;
    case Regime::Ambiguous: return 0.0;
  }
  return 0.0;
}

RegimeInfo classify(double omega0, double a, double z, double strictness) {
  if (!(omega0 > 0) || !(z > 0) || !(a >= 0)) throw DomainError("classify", "needs omega0 > 0, z > 0, a >= 0");
  const double s = strictness;
  RegimeInfo info;
  info.a_over_w0 = a / omega0;
  info.az = a * z;
  info.w0z = omega0 * z;
  const double ra = info.a_over_w0, b = info.az, c = info.w0z;

  Regime candidates[3];
  int n = 0;
  if (ra <= 1.0 / s) {
    info.band = AccelBand::Low;
    candidates[n++] = Regime::LowAShort;
    candidates[n++] = Regime::LowAIntermediate;
    candidates[n++] = Regime::LowALong;
  } else if (ra >= s) {
    info.band = AccelBand::High;
    candidates[n++] = Regime::HighAShort;
    candidates[n++] = Regime::HighAFarIntermediate;
    candidates[n++] = Regime::HighAFarLong;
  } else {
    info.band = AccelBand::NearResonance;
    candidates[n++] = Regime::NearResNear;
    candidates[n++] = Regime::NearResFar;
  }

  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m = regime_margin(candidates[i], ra, b, c);
    if (m >= s && m > best) {
      best = m;
      info.regime = candidates[i];
    }
    if (info.regime == Regime::Ambiguous) info.margin = std::max(info.margin, m);
  }
  if (info.regime != Regime::Ambiguous) info.margin = best;
  return info;
}

AsymptoteValues asymptote(Regime regime, const AtomSpec& atom, const Kinematics& kin) {
  const double w = atom.omega0, a = kin.accel, z = kin.z;
  const double px = atom.pol.px, py = atom.pol.py, pz = atom.pol.pz, wxz = atom.pol.w_xz();
  const double k = 1.0 / (4.0 * pi);
  const double z2 = z * z, z3 = z2 * z, z4 = z3 * z;
  const double w2 = w * w, w3 = w2 * w;
  AsymptoteValues out;

  switch (regime) {
    case Regime::LowAShort: {
      const double lg = std::log(2.0 * w * z);
      out.vf = -k * (-3.0 * w2 * pz / (4.0 * pi * z2) + 3.0 * a * w2 * wxz / (4.0 * pi * z) -
                     w2 * (a * a + w2) / pi * lg * (px + py - pz));
      // a^2 (2 / (a z)) sqrt(ax az) is carried as 2 a / z to stay finite at a = 0.
      out.rr = -k * (3.0 * w * (px + py + 2.0 * pz) / (32.0 * z3) -
                     3.0 * a * a * w / (64.0 * z) * (px + 3.0 * py + 32.0 * w2 * z2 * pz) -
                     3.0 * a * w * wxz / (32.0 * z2));
      out.total = k * (-3.0 * w * (px + py + 2.0 * pz) / (32.0 * z3) +
                       3.0 * a * a * w / (64.0 * z) * (px + 3.0 * py + 64.0 * w * z * lg / 3.0 * pz) +
                       3.0 * a * w * wxz / (32.0 * z2));
      return out;
    }
    case Regime::LowAIntermediate:
    case Regime::LowALong: {
      const double ph = 2.0 * w * z;
      const double amp_cos = 3.0 * w3 / (8.0 * z) * (px + py - pz / (2.0 * z2 * w2)) -
                             3.0 * w3 * a * a * z / 16.0 * (3.0 * px + py - 2.0 * pz) +
                             3.0 * w3 * a / 8.0 * wxz;
      const double amp_sin = 3.0 * w2 * (px + py + 2.0 * pz) / (16.0 * z2) +
                             3.0 * w2 * a * a / 16.0 * (2.0 * px + py - 3.0 * pz) -
                             3.0 * w2 * a / (16.0 * z) * wxz;
      const double smooth = 3.0 / (8.0 * pi * z4) * (px + py + pz) +
                            3.0 * a * a / (8.0 * pi * w2 * z4) * (2.0 * px / (w2 * z2) - py - pz) -
                            3.0 * a / (8.0 * pi * w2 * z4 * z) * wxz;
      const double osc = amp_cos * std::cos(ph) - amp_sin * std::sin(ph);
      out.vf = -k * (osc + smooth);
      out.rr = k * osc;
      out.total = -k * smooth;
      return out;
    }
    case Regime::HighAShort: {
      out.vf = k * 3.0 * a / (32.0 * pi * z3) * (px + py + 2.0 * pz - a * z * wxz);
      out.rr = -k * (3.0 * w * (px + py + 2.0 * pz) / (32.0 * z3) - 3.0 * w * a * wxz / (32.0 * z2) -
                     3.0 * w * a * a * (px + 3.0 * py) / (64.0 * z) - 45.0 * w * std::pow(a, 4) * z * pz / 128.0);
      // Vacuum fluctuations dominate; for isotropic weights this is exactly
      // (a / 8 pi z^3 - a^2 / 32 pi z^2) / 4 pi.
      out.total = *out.vf;
      return out;
    }
    case Regime::HighAFarIntermediate:
    case Regime::HighAFarLong: {
      const double lg = std::log(2.0 * a * z);
      const double th = 2.0 * w / a * lg;
      const double C = std::cos(th), S = std::sin(th);
      const double r = a / w;
      const double q = 1.0 / (4.0 * w2 * a * a * z4);
      out.log_phase = th;
      const double vx = -3.0 * px / (8.0 * pi * z4) * ((1.0 - w2 / (a * a)) * C + 2.0 / r * S - 1.0);
      const double vy = 3.0 * w2 * py / (8.0 * pi * z2) * ((1.0 - q) * C - r * S + 1.0 / (a * a * z2) + q);
      const double vz =
          3.0 * w2 * pz / (8.0 * pi * z2) * ((1.0 - 5.0 * q) * C - r * S + 1.0 / (a * a * z2) + 5.0 * q);
      const double vxz = 3.0 * w2 * wxz / (8.0 * pi * a * z3) * (C - r * S - 1.0 / (w2 * z2));
      const double rx = -3.0 * w * px / (8.0 * a * z4) * ((1.0 - w2 / (a * a)) * C + 2.0 / r * S);
      const double ry = 3.0 * w3 * py / (8.0 * a * z2) * ((1.0 - q) * C - r * S);
      const double rz = 3.0 * w3 * pz / (8.0 * a * z2) * ((1.0 - 5.0 * q) * C - r * S);
      const double rxz = 3.0 * w3 * wxz / (8.0 * a * a * z3) * (C - r * S);
      if (regime == Regime::HighAFarLong) {
        out.vf = -k * (vx + vy + vz + vxz);
        out.rr = k * (rx + ry + rz + rxz);
        out.total = -k * (3.0 * w * px / (8.0 * a * z4) +
                          3.0 * w2 / (8.0 * pi * z2) * (1.0 - 2.0 * lg) * (py + pz + wxz / (a * z)));
      } else {
        // The x and xz terms are not valid for omega0 z << 1; only the y, z
        // contributions are reported.
        out.vf = -k * (vy + vz);
        out.rr = k * (ry + rz);
        out.total = *out.vf + *out.rr;
        out.dominance_indeterminate = true;
        out.yz_only = true;
      }
      return out;
    }
    case Regime::NearResNear: {
      out.total = -3.0 * w / (128.0 * pi) * ((px + py + 2.0 * pz) / z3 - a / z2 * wxz);
      return out;
    }
    case Regime::NearResFar: {
      const double n = thermal_factor(w, a);
      const double ph = 2.0 * std::asinh(a * z);
      const double amp_c = 2.0 * px / (w3 * z3 * z3) + 4.0 * w * (py + pz) / z2 + 4.0 * wxz / z3;
      const double amp_s = 8.0 * px / (w * z4) + 4.0 * w * (py + pz) / z2 + 4.0 * wxz / z3;
      out.total = -3.0 * w / (128.0 * pi) *
                  (n * (amp_c * std::cos(ph) - amp_s * std::sin(ph)) +
                   2.0 / (pi * w * z4) * (2.0 * px + py + pz - wxz / (w * z)));
      out.generalized_planck_factor = std::abs(a - w) > 1e-12 * w;
      return out;
    }
    case Regime::Ambiguous: break;
  }
  throw UnsupportedRegime("no closed-form asymptote for an ambiguous regime");
}

AsymptoteReport compare(Regime regime, const AtomSpec& atom, const Kinematics& kin, const QuadratureSettings& s) {
  AsymptoteReport rep;
  rep.regime = regime;
  rep.kin = kin;
  rep.margin = regime_margin(regime, kin.accel / atom.omega0, kin.az(), kin.w0z(atom.omega0));
  rep.asymptote = asymptote(regime, atom, kin);
  const ShiftBreakdown exact = shift_total(atom, kin, s);
  rep.exact_total = exact.total_reduced;
  rep.exact_vf = exact.vf_reduced;
  rep.exact_rr = exact.rr_reduced;
  if (rep.asymptote.yz_only) {
    const auto& y = exact.per_component[static_cast<std::size_t>(Component::YY)];
    const auto& zc = exact.per_component[static_cast<std::size_t>(Component::ZZ)];
    rep.exact_total = y.total + zc.total;
    rep.exact_vf = y.vf + zc.vf;
    rep.exact_rr = y.rr + zc.rr;
  }
  rep.rel_deviation =
      std::abs(rep.exact_total - rep.asymptote.total) / std::max(std::abs(rep.exact_total), DBL_MIN);
  return rep;
}

std::vector<AsymptoteReport> deviation_scan(Regime regime, const AtomSpec& atom,
                                            const std::vector<Kinematics>& grid, const QuadratureSettings& s) {
  std::vector<AsymptoteReport> out;
  out.reserve(grid.size());
  for (const Kinematics& k : grid) out.push_back(compare(regime, atom, k, s));
  std::stable_sort(out.begin(), out.end(),
                   [](const AsymptoteReport& x, const AsymptoteReport& y) { return x.margin > y.margin; });
  return out;
}

}  // namespace accelshift
