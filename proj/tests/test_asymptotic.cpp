#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include "accelshift/asymptotic.hpp"
#include "accelshift/errors.hpp"
#include "accelshift/units.hpp"

using namespace accelshift;
using std::numbers::pi;

namespace {

const AtomSpec kIso{1.0, Polarization{}};
constexpr double k4pi = 1.0 / (4.0 * pi);

}  // namespace

TEST_CASE("classification examples") {
  CHECK(classify(1, 1e-3, 1e-2).regime == Regime::LowAShort);
  CHECK(classify(1, 1e-3, 1e3).regime == Regime::Ambiguous);
  const auto n = to_natural(1e23, 1e-2, 1e15);
  const RegimeInfo far = classify(n.omega0, n.kin.accel, n.kin.z);
  CHECK(far.regime == Regime::NearResFar);
  CHECK(far.a_over_w0 == doctest::Approx(0.33356).epsilon(1e-4));

  const RegimeInfo res = classify(1, 1, 1);
  CHECK(res.band == AccelBand::NearResonance);
  CHECK(res.regime == Regime::Ambiguous);

  const RegimeInfo still = classify(1e15, 0.0, 3.3e-17);
  CHECK(still.regime == Regime::LowAShort);
  CHECK(still.band == AccelBand::Low);
}

TEST_CASE("classification is exclusive and respects strictness") {
  for (double ra : {1e-3, 0.05, 0.5, 3.0, 30.0, 1e3})
    for (double az : {1e-4, 0.02, 1.0, 50.0, 1e4})
      for (double s : {3.0, 10.0, 100.0}) {
        const double a = ra, z = az / a;
        const RegimeInfo info = classify(1.0, a, z, s);
        int hits = 0;
        const Regime all[] = {Regime::LowAShort,   Regime::LowAIntermediate,     Regime::LowALong,
                              Regime::HighAShort,  Regime::HighAFarIntermediate, Regime::HighAFarLong,
                              Regime::NearResNear, Regime::NearResFar};
        for (Regime r : all) hits += regime_margin(r, ra, az, z) >= s ? 1 : 0;
        if (info.regime != Regime::Ambiguous) CHECK(info.margin >= s);
        if (hits == 0) CHECK(info.regime == Regime::Ambiguous);
      }
}

TEST_CASE("ambiguous regime has no asymptote") {
  CHECK_THROWS_AS(asymptote(Regime::Ambiguous, kIso, {1.0, 1.0}), UnsupportedRegime);
}

TEST_CASE("isotropic closed forms") {
  {
    const double a = 1e-5, z = 1e-2;
    const double expect = -k4pi * (1.0 / (8 * z * z * z) - a / (32 * z * z));
    CHECK(asymptote(Regime::LowAShort, kIso, {a, z}).total == doctest::Approx(expect).epsilon(1e-6));
  }
  {
    const double a = 1e-4, z = 1e3;
    const double expect = -k4pi * (3 / (8 * pi * std::pow(z, 4)) - a / (8 * pi * std::pow(z, 5)));
    CHECK(asymptote(Regime::LowALong, kIso, {a, z}).total == doctest::Approx(expect).epsilon(1e-6));
  }
  {
    const double a = 100, z = 1e-5;
    const double expect = k4pi * (a / (8 * pi * z * z * z) - a * a / (32 * pi * z * z));
    CHECK(asymptote(Regime::HighAShort, kIso, {a, z}).total == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("low-a asymptotes reduce to the static ones at a = 0") {
  const AtomSpec atom{1.0, validate_polarization(0.2, 0.3, 0.5)};
  const double z = 1e-3;
  const double lead = -3.0 / (128 * pi) * (0.2 + 0.3 + 1.0) / (z * z * z);
  CHECK(asymptote(Regime::LowAShort, atom, {0.0, z}).total == doctest::Approx(lead).epsilon(1e-14));
  CHECK(asymptote(Regime::NearResNear, atom, {0.0, z}).total == doctest::Approx(lead).epsilon(1e-14));
  const double zl = 1e3;
  CHECK(asymptote(Regime::LowALong, atom, {0.0, zl}).total ==
        doctest::Approx(-k4pi * 3 / (8 * pi * std::pow(zl, 4))).epsilon(1e-14));
}

TEST_CASE("near-resonance near-field leading term") {
  const double a = 1.0, z = 1e-4;
  const double lead = -3.0 / (128 * pi) * (4.0 / 3.0) / (z * z * z);
  const double total = asymptote(Regime::NearResNear, kIso, {a, z}).total;
  CHECK(total == doctest::Approx(lead).epsilon(1e-3));
}

TEST_CASE("Planck factor generalization is flagged") {
  CHECK_FALSE(asymptote(Regime::NearResFar, kIso, {1.0, 100.0}).generalized_planck_factor);
  CHECK(asymptote(Regime::NearResFar, kIso, {0.5, 100.0}).generalized_planck_factor);
}

TEST_CASE("far high-acceleration sign law") {
  const double a = 100, z = 50;
  CHECK(2 / a * std::log(2 * a * z) < 0.3);
  CHECK(asymptote(Regime::HighAFarLong, {1, validate_polarization(1, 0, 0)}, {a, z}).total < 0);
  CHECK(asymptote(Regime::HighAFarLong, {1, validate_polarization(0, 1, 0)}, {a, z}).total > 0);
}

TEST_CASE("intermediate far high-acceleration covers y and z only") {
  const double a = 1e4, z = 1e-2;
  const AsymptoteValues iso = asymptote(Regime::HighAFarIntermediate, kIso, {a, z});
  const AsymptoteValues yz = asymptote(Regime::HighAFarIntermediate, {1, validate_polarization(0, 0.5, 0.5)}, {a, z});
  CHECK(iso.yz_only);
  CHECK(iso.dominance_indeterminate);
  CHECK(iso.total == doctest::Approx(yz.total * 2.0 / 3.0).epsilon(1e-14));
  CHECK(asymptote(Regime::HighAFarIntermediate, {1, validate_polarization(1, 0, 0)}, {a, z}).total == 0.0);
}

TEST_CASE("asymptotes converge as margins deepen") {
  // (a, z) at omega0 = 1 for regime margins 10, 100, 1000.
  using Pt = std::function<std::pair<double, double>(double)>;
  const std::pair<Regime, Pt> seqs[] = {
      {Regime::LowAShort, [](double m) { return std::pair{1 / m, 1 / m}; }},
      {Regime::LowAIntermediate, [](double m) { return std::pair{1 / (m * m), m}; }},
      {Regime::LowALong, [](double m) { return std::pair{1 / m, m * m}; }},
      {Regime::HighAFarIntermediate, [](double m) { return std::pair{m * m, 1 / m}; }},
      {Regime::HighAFarLong, [](double m) { return std::pair{m, m}; }},
      {Regime::NearResNear, [](double m) { return std::pair{1.0, 1 / m}; }},
      {Regime::NearResFar, [](double m) { return std::pair{1.0, m}; }},
  };
  for (const auto& [regime, pt] : seqs)
    for (const Polarization& p : {Polarization{}, validate_polarization(1, 0, 0), validate_polarization(0.1, 0.2, 0.7)}) {
      CAPTURE(to_string(regime));
      CAPTURE(p.px);
      double prev = HUGE_VAL;
      for (double m : {10.0, 100.0, 1000.0}) {
        const auto [a, z] = pt(m);
        const AsymptoteReport rep = compare(regime, {1.0, p}, {a, z});
        CAPTURE(m);
        CHECK(rep.margin == doctest::Approx(m));
        CHECK(rep.rel_deviation <= 1.2 * prev);
        prev = rep.rel_deviation;
      }
      CHECK(prev < 0.11);
    }
}

TEST_CASE("deviation_scan orders by margin") {
  const std::vector<Kinematics> grid = {{0.1, 0.1}, {1e-3, 1e-3}, {1e-2, 1e-2}};
  const auto reps = deviation_scan(Regime::LowAShort, kIso, grid);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0].margin > reps[1].margin);
  CHECK(reps[1].margin > reps[2].margin);
  CHECK(reps[0].rel_deviation < reps[2].rel_deviation);
  CHECK(reps[1].rel_deviation <= 0.02);
}
