// Expectations for the high-acceleration, short-distance limit stated by the
// closed-form asymptote. Run as their own ctest entry (see tests/CMakeLists.txt).
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "accelshift/asymptotic.hpp"
#include "accelshift/shift.hpp"

using namespace accelshift;
using std::numbers::pi;

TEST_SUITE("high_a_short") {
  TEST_CASE("isotropic total is positive at a = 100 omega0, az = 1e-3") {
    const double w = 1.0, a = 100.0, z = 1e-5;
    CHECK(shift_total({w, Polarization{}}, {a, z}).total_reduced > 0);
  }

  TEST_CASE("vacuum fluctuations follow 3a / (32 pi z^3) (p_x + p_y + 2 p_z) / 4 pi") {
    const double w = 1.0, a = 100.0, z = 1e-5;
    const double expect = 3 * a / (32 * pi * z * z * z) * (4.0 / 3.0) / (4 * pi);
    CHECK(shift_vf({w, Polarization{}}, {a, z}) == doctest::Approx(expect).epsilon(0.05));
  }
}

TEST_SUITE("high_a_short") {
  TEST_CASE("asymptote converges as margins deepen") {
    double prev = HUGE_VAL;
    for (double m : {10.0, 100.0, 1000.0}) {
      const AsymptoteReport rep = compare(Regime::HighAShort, {1.0, Polarization{}}, {m, 1 / (m * m)});
      CHECK(rep.rel_deviation <= 1.2 * prev);
      prev = rep.rel_deviation;
    }
  }
}
