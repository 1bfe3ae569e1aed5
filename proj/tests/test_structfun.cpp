#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "accelshift/errors.hpp"
#include "accelshift/structfun.hpp"

using namespace accelshift;
using std::numbers::pi;

namespace {

// Reference values computed with 30-digit arithmetic (mpmath quad / closed forms).
constexpr double kFxxStatic11 = -3.06703536329279055;  // 3 cos 2 - 2 sin 2
constexpr double kFxx111 = -2.48780927541412904;
constexpr double kFyy111 = -3.41704403696719787;
constexpr double kFzz111 = -2.48780927541412904;
constexpr double kFxz111 = -0.92923476155306881;
constexpr double kGstatXX11 = -0.695206387781872169;
constexpr double kGstatZZ11 = -0.876130893523151703;

struct GRef {
  Component c;
  double w0, z, a, value;
};
constexpr GRef kGRefs[] = {
    {Component::XX, 1, 0.5, 2, -8.34796266673171875}, {Component::YY, 1, 0.5, 2, -4.33077805335471716},
    {Component::ZZ, 1, 0.5, 2, -8.34796266673171875}, {Component::XZ, 1, 0.5, 2, 4.01718461337700159},
    {Component::XX, 1, 1, 1, -0.728032695035639594}, {Component::YY, 1, 1, 1, -0.529814853181084287},
    {Component::ZZ, 1, 1, 1, -0.728032695035639594}, {Component::XZ, 1, 1, 1, 0.198217841854555307},
};

using mp = boost::multiprecision::cpp_bin_float_50;

// The printed f_zz, transcribed independently in 50-digit arithmetic.
mp f_zz_mp(mp w, mp z, mp a) {
  const mp b2 = a * a * z * z;
  const mp q = 1 + b2;
  const mp ph = 2 * w * boost::multiprecision::asinh(a * z) / a;
  const mp t1 = -(2 + b2 * (5 - 4 * z * z * w * w * q)) / (z * z * z * pow(q, mp(2.5)));
  const mp t2 = -2 * w * (2 + b2 + 2 * b2 * b2) / (z * z * q * q);
  return t1 * cos(ph) + t2 * sin(ph);
}

}  // namespace

TEST_CASE("f closed forms at reference points") {
  CHECK(f_component(Component::XX, 1, 1, 0) == doctest::Approx(kFxxStatic11).epsilon(1e-14));
  CHECK(f_component(Component::YY, 1, 1, 0) == doctest::Approx(kFxxStatic11).epsilon(1e-14));
  CHECK(f_component(Component::XX, 1, 1, 1) == doctest::Approx(kFxx111).epsilon(1e-14));
  CHECK(f_component(Component::YY, 1, 1, 1) == doctest::Approx(kFyy111).epsilon(1e-14));
  CHECK(f_component(Component::ZZ, 1, 1, 1) == doctest::Approx(kFzz111).epsilon(1e-14));
  CHECK(f_component(Component::XZ, 1, 1, 1) == doctest::Approx(kFxz111).epsilon(1e-14));
  CHECK(f_component(Component::XZ, 1, 1, 0) == 0.0);
  CHECK(f_component(Component::XZ, 3, 0.2, 0) == 0.0);
}

TEST_CASE("f_zz against a 50-digit evaluation") {
  const double pts[][3] = {{1, 1, 1}, {1, 0.5, 2}, {1e15, 3.3e-8, 3.3e14}, {2, 7, 0.01}, {1, 0.01, 300}};
  for (const auto& p : pts) {
    const double ref = static_cast<double>(f_zz_mp(p[0], p[1], p[2]));
    CHECK(f_component(Component::ZZ, p[0], p[1], p[2]) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("f_xx equals f_yy at a = 0") {
  for (double wz : {0.01, 1.0, 100.0}) {
    const double fx = f_component(Component::XX, 1.0, wz, 0.0);
    const double fy = f_component(Component::YY, 1.0, wz, 0.0);
    CHECK(std::abs(fx - fy) <= 1e-12 * std::abs(fx));
  }
}

TEST_CASE("phase series and asinh branches meet") {
  const double w = 1.0, z = 1.0;
  for (double az : {0.999999e-8, 1.000001e-8}) {
    const double a = az / z;
    const double direct = 2.0 * w / a * std::asinh(a * z);
    CHECK(phase(w, z, a) == doctest::Approx(direct).epsilon(1e-13));
  }
  CHECK(phase(2.0, 0.3, 0.0) == 2.0 * 2.0 * 0.3);
}

TEST_CASE("g frozen values") {
  for (const GRef& r : kGRefs) {
    CAPTURE(to_string(r.c));
    CAPTURE(r.a);
    const GValue g = g_component(r.c, r.w0, r.z, r.a);
    CHECK(g.value == doctest::Approx(r.value).epsilon(1e-10));
    CHECK(g.err_est <= 1e-9 * std::abs(r.value));
  }
  CHECK(g_static_limit(Component::XX, 1, 1).value == doctest::Approx(kGstatXX11).epsilon(1e-10));
  CHECK(g_static_limit(Component::YY, 1, 1).value == doctest::Approx(kGstatXX11).epsilon(1e-10));
  CHECK(g_static_limit(Component::ZZ, 1, 1).value == doctest::Approx(kGstatZZ11).epsilon(1e-10));
  CHECK(g_static_limit(Component::XZ, 1, 1).value == 0.0);
}

TEST_CASE("g needs a > 0") { CHECK_THROWS_AS(g_component(Component::XX, 1, 1, 0), DomainError); }

TEST_CASE("short-distance limits of g") {
  const double z = 1e-3, z3 = z * z * z;
  CHECK(g_component(Component::XX, 1, z, 1e-6).value * z3 == doctest::Approx(-1.0).epsilon(1e-2));
  CHECK(g_component(Component::YY, 1, z, 1e-6).value * z3 == doctest::Approx(-1.0).epsilon(1e-2));
  CHECK(g_component(Component::ZZ, 1, z, 1e-6).value * z3 == doctest::Approx(-2.0).epsilon(1e-2));
  CHECK(g_static_limit(Component::XX, 1, 1e-6).value * 1e-18 == doctest::Approx(-1.0).epsilon(1e-5));
}

TEST_CASE("g_xz is linear in a as a -> 0") {
  const double w = 1.0, z = 0.7;
  auto integrand = [&](double u) {
    const double d = 0.25 * u * u + z * z;
    return u * u / (d * d * d) * std::exp(-w * u);
  };
  boost::math::quadrature::exp_sinh<double> es;
  const double slope = 2.0 * z / pi * es.integrate(integrand);
  for (double a : {1e-9, 1e-7, 1e-5 / z * 0.99}) {
    const double r = g_component(Component::XZ, w, z, a).value / a;
    CHECK(r == doctest::Approx(slope).epsilon(1e-2));
  }
}

TEST_CASE("g is continuous at a = 0") {
  for (double wz : {0.1, 1.0, 10.0}) {
    const double w = 1.0, z = wz, a = 1e-6 * w;
    for (Component c : {Component::XX, Component::YY, Component::ZZ}) {
      CAPTURE(wz);
      CAPTURE(to_string(c));
      const double st = g_static_limit(c, w, z).value;
      const double ac = g_component(c, w, z, a).value;
      CHECK(std::abs(ac - st) <= std::max(1e-4 * std::abs(st), 1e-6));
    }
  }
}

TEST_CASE("g stays finite across scales") {
  for (double ra : {1e-4, 1e-2, 1.0, 1e2, 1e3})
    for (double wz : {1e-4, 1e-2, 1.0, 30.0})
      for (Component c : kComponents) {
        const double w = 1.0, a = ra * w, z = wz / w;
        const GValue g = g_component(c, w, z, a);
        CAPTURE(ra);
        CAPTURE(wz);
        CHECK(std::isfinite(g.value));
        CHECK(std::isfinite(g.err_est));
      }
}

TEST_CASE("accuracy failure carries the best estimate") {
  QuadratureSettings s;
  s.rel_tol = 1e-14;
  s.max_subdivisions = 50;
  try {
    g_component(Component::YY, 1.0, 1e-7, 30.0, s);
    FAIL("expected AccuracyError");
  } catch (const AccuracyError& e) {
    CHECK(std::isfinite(e.best_estimate()));
    CHECK(e.err_est() > 0);
  }
}

TEST_CASE("settings validation") {
  QuadratureSettings s;
  s.max_subdivisions = 49;
  CHECK_THROWS(s.validate());
  s = {};
  s.rel_tol = 0;
  CHECK_THROWS(s.validate());
}

TEST_CASE("thermal factor") {
  CHECK(thermal_factor(1.0, 0.0) == 0.0);
  CHECK(thermal_factor(1.0, 2 * pi) == doctest::Approx(1.16395341373865285).epsilon(1e-14));
  // Series a / (pi omega0) - 1 + pi omega0 / (3 a) + ...
  CHECK(thermal_factor(1.0, 1000.0) == doctest::Approx(1000.0 / pi - 1.0 + pi / 3000.0).epsilon(1e-9));
  CHECK(thermal_factor(1.0, 1e5) == doctest::Approx(1e5 / pi).epsilon(2e-3));
  CHECK(thermal_factor(1.0, 1e-3) == 0.0);
}

TEST_CASE("stat_functions at a = 0") {
  const StatFunctions s = stat_functions(1.0, 0.8, 0.0);
  CHECK(s.nbar2 == 0.0);
  CHECK(s.f_of(Component::XZ) == 0.0);
  CHECK(s.g_of(Component::XZ) == 0.0);
  CHECK(s.f_of(Component::XX) == s.f_of(Component::YY));
}
