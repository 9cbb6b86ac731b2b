#include <doctest.h>

#include <cmath>
#include <limits>

#include "bellsim/montecarlo.hpp"
#include "bellsim/scenarios.hpp"

using namespace bellsim;

namespace {

const double kPi = std::acos(-1.0);

double random_angle(SplitMix64& rng) {
  return (rng.next_double() - 0.5) * 8.0 * kPi;
}

// Closed-form coincidence rates of the entangled-pair scenario, used as the
// independent oracle for the Born-rule route.
std::array<double, 4> closed_form_bell_rates(double n0, double alpha,
                                             double beta) {
  const double c = std::cos(0.5 * (alpha + beta));
  const double s = std::sin(0.5 * (alpha + beta));
  return {n0 * c * c, n0 * s * s, n0 * s * s, n0 * c * c};
}

}  // namespace

TEST_CASE("standard rates at alpha=beta=pi/4") {
  const RateTable t =
      analytic_rates(ScenarioKind::StandardBell, kPi / 4.0, kPi / 4.0, 1000.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(t.rate[i] == doctest::Approx(500.0).epsilon(1e-12));
    CHECK(t.observable[i]);
  }
  CHECK(t.angle_role == AngleRole::MeasurementSetting);
}

TEST_CASE("standard rates match the closed form") {
  SplitMix64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const double alpha = random_angle(rng);
    const double beta = random_angle(rng);
    const RateTable t =
        analytic_rates(ScenarioKind::StandardBell, alpha, beta, 1000.0);
    const std::array<double, 4> expected =
        closed_form_bell_rates(1000.0, alpha, beta);
    for (int k = 0; k < 4; ++k) {
      CHECK(t.rate[k] == doctest::Approx(expected[k]).epsilon(1e-9));
    }
  }
}

TEST_CASE("standard total rate is setting-independent") {
  // N(++) + N(-+) + N(+-) + N(--) = 2 N0 at every setting.
  SplitMix64 rng(22);
  for (int i = 0; i < 100; ++i) {
    const RateTable t = analytic_rates(ScenarioKind::StandardBell,
                                       random_angle(rng), random_angle(rng),
                                       1000.0);
    CHECK(std::abs(t.total_rate() - 2000.0) <= 1e-9 * 2000.0);
  }
}

TEST_CASE("two-detector keeps the physics, hides three outcomes") {
  SplitMix64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const double alpha = random_angle(rng);
    const double beta = random_angle(rng);
    const RateTable four =
        analytic_rates(ScenarioKind::StandardBell, alpha, beta, 1000.0);
    const RateTable two =
        analytic_rates(ScenarioKind::TwoDetector, alpha, beta, 1000.0);
    for (int k = 0; k < 4; ++k) CHECK(two.rate[k] == four.rate[k]);
    CHECK(two.observable[0]);
    CHECK_FALSE(two.observable[1]);
    CHECK_FALSE(two.observable[2]);
    CHECK_FALSE(two.observable[3]);
  }
}

TEST_CASE("source-modulated rates") {
  SUBCASE("full rate at alpha+beta = 0") {
    const RateTable t =
        analytic_rates(ScenarioKind::SourceModulated, 0.0, 0.0, 1000.0);
    CHECK(t.rate[0] == 1000.0);
    CHECK(t.rate[1] == 0.0);
    CHECK(t.rate[2] == 0.0);
    CHECK(t.rate[3] == 0.0);
    CHECK(t.observable[0]);
    CHECK_FALSE(t.observable[1]);
    CHECK(t.angle_role == AngleRole::SourceControl);
  }
  SUBCASE("exactly zero at the excluded point alpha+beta = pi") {
    const RateTable t = analytic_rates(ScenarioKind::SourceModulated,
                                       kPi / 2.0, kPi / 2.0, 1000.0);
    CHECK(t.rate[0] == 0.0);
    CHECK(t.total_rate() == 0.0);
  }
}

TEST_CASE("source-modulated total rate follows the settings") {
  // The observable total is N0 cos^2((alpha+beta)/2); the total itself is
  // setting-dependent, unlike in the entangled-pair scenarios.
  SplitMix64 rng(24);
  for (int i = 0; i < 100; ++i) {
    const double alpha = random_angle(rng);
    const double beta = random_angle(rng);
    const RateTable t =
        analytic_rates(ScenarioKind::SourceModulated, alpha, beta, 1000.0);
    const double c = std::cos(0.5 * (alpha + beta));
    CHECK(t.total_observable_rate() ==
          doctest::Approx(1000.0 * c * c).epsilon(1e-9));
  }
  const RateTable half = analytic_rates(ScenarioKind::SourceModulated,
                                        kPi / 4.0, kPi / 4.0, 1000.0);
  CHECK(half.total_observable_rate() == doctest::Approx(500.0).epsilon(1e-12));
  CHECK(std::abs(half.total_observable_rate() - 1000.0) > 100.0);
}

TEST_CASE("shifted setting identities") {
  const auto map = shifted_setting_identities(0.3, 0.5);

  CHECK(map[0].alpha == 0.3);
  CHECK(map[0].beta == 0.5);
  CHECK(map[pair_index({Outcome::Minus, Outcome::Plus})].alpha ==
        doctest::Approx(0.3 + kPi).epsilon(1e-15));
  CHECK(map[pair_index({Outcome::Minus, Outcome::Plus})].beta == 0.5);
  CHECK(map[pair_index({Outcome::Plus, Outcome::Minus})].alpha == 0.3);
  CHECK(map[pair_index({Outcome::Plus, Outcome::Minus})].beta ==
        doctest::Approx(0.5 + kPi).epsilon(1e-15));
  CHECK(map[3].alpha == doctest::Approx(0.3 + kPi).epsilon(1e-15));
  CHECK(map[3].beta == doctest::Approx(0.5 + kPi).epsilon(1e-15));
}

TEST_CASE("rate of each outcome equals the pp rate at its shifted setting") {
  SplitMix64 rng(25);
  for (int i = 0; i < 50; ++i) {
    const double alpha = random_angle(rng);
    const double beta = random_angle(rng);
    const RateTable base =
        analytic_rates(ScenarioKind::StandardBell, alpha, beta, 1000.0);
    for (const ShiftedSetting& s : shifted_setting_identities(alpha, beta)) {
      const RateTable shifted =
          analytic_rates(ScenarioKind::StandardBell, s.alpha, s.beta, 1000.0);
      CHECK(base.rate[pair_index(s.pair)] ==
            doctest::Approx(shifted.rate[0]).epsilon(1e-9));
    }
  }
}

TEST_CASE("a double pi shift restores the rates") {
  SplitMix64 rng(26);
  const double two_pi = 2.0 * kPi;
  for (int i = 0; i < 50; ++i) {
    const double alpha = random_angle(rng);
    const double beta = random_angle(rng);
    const RateTable base =
        analytic_rates(ScenarioKind::StandardBell, alpha, beta, 1000.0);
    const RateTable wrapped = analytic_rates(ScenarioKind::StandardBell,
                                             alpha + two_pi, beta + two_pi,
                                             1000.0);
    for (int k = 0; k < 4; ++k) {
      CHECK(wrapped.rate[k] == doctest::Approx(base.rate[k]).epsilon(1e-9));
    }
  }
}

TEST_CASE("four-photon effective model matches the modulated source") {
  SplitMix64 rng(27);
  for (int i = 0; i < 100; ++i) {
    const double alpha = random_angle(rng);
    const double beta = random_angle(rng);
    const RateTable sm =
        analytic_rates(ScenarioKind::SourceModulated, alpha, beta, 1000.0);
    const RateTable fp = analytic_rates(ScenarioKind::FourPhotonEffective,
                                        alpha, beta, 1000.0);
    for (int k = 0; k < 4; ++k) {
      CHECK(fp.rate[k] == sm.rate[k]);
      CHECK(fp.observable[k] == sm.observable[k]);
    }
    CHECK(fp.kind == ScenarioKind::FourPhotonEffective);
    CHECK(sm.kind == ScenarioKind::SourceModulated);
    CHECK(fp.angle_role == AngleRole::SourceControl);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(SourceModel::constant(0.0), invalid_input_error);
  CHECK_THROWS_AS(SourceModel::constant(-5.0), invalid_input_error);
  CHECK_THROWS_AS(analytic_rates(ScenarioKind::StandardBell,
                                 std::numeric_limits<double>::infinity(), 0.0,
                                 1000.0),
                  invalid_input_error);
  // Modulation and scenario must agree.
  CHECK_THROWS_AS(analytic_rates(ScenarioKind::StandardBell, 0.0, 0.0,
                                 SourceModel::modulated(1000.0)),
                  invalid_input_error);
  CHECK_THROWS_AS(analytic_rates(ScenarioKind::SourceModulated, 0.0, 0.0,
                                 SourceModel::constant(1000.0)),
                  invalid_input_error);
}

TEST_CASE("scenario names round-trip") {
  for (ScenarioKind kind :
       {ScenarioKind::StandardBell, ScenarioKind::TwoDetector,
        ScenarioKind::SourceModulated, ScenarioKind::FourPhotonEffective}) {
    CHECK(scenario_from_name(scenario_name(kind)) == kind);
  }
  CHECK_THROWS_AS(scenario_from_name("bogus"), invalid_input_error);
}
