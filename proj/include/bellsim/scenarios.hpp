#pragma once

#include <array>
#include <string>

#include "bellsim/quantum.hpp"

// The three idealized polarization experiments plus the postselected
// four-photon effective model, expressed as analytic coincidence-rate
// generators.
//
//   StandardBell        entangled pair, PBS settings alpha/beta, 4 detectors
//   TwoDetector         same physics, but only the (+,+) detector pair exists
//   SourceModulated     product state |HH>, PBS fixed at 0/0, source intensity
//                       proportional to cos^2((alpha+beta)/2); the angles act
//                       on the source, not on any measurement
//   FourPhotonEffective the postselected effective model: an unentangled
//                       state emitted at the same modulated rate; identical
//                       rate tables to SourceModulated with different
//                       provenance

namespace bellsim {

enum class ScenarioKind {
  StandardBell,
  TwoDetector,
  SourceModulated,
  FourPhotonEffective,
};

// Whether the two angles of a scenario parameterize local measurements or
// the source intensity. The distinction carries no arithmetic weight, which
// is exactly why it has to be tracked explicitly.
enum class AngleRole { MeasurementSetting, SourceControl };

enum class Modulation { None, CosSquaredHalfSum };

struct SourceModel {
  double base_rate = 1.0;  // events per unit exposure, > 0
  Modulation modulation = Modulation::None;

  static SourceModel constant(double n0);
  static SourceModel modulated(double n0);
  static SourceModel for_scenario(ScenarioKind kind, double n0);

  // Instantaneous emission rate at the given control angles. Modulated
  // intensity factors at or below tol::zero_rate_snap become exactly zero.
  double rate_at(double alpha, double beta) const;

  void validate() const;  // throws invalid_input_error
};

// Analytic coincidence rates per outcome pair at one setting pair.
// Unobservable entries keep their physical rate but are flagged, so a test
// can always compare against what a four-detector experiment would record.
struct RateTable {
  ScenarioKind kind = ScenarioKind::StandardBell;
  AngleRole angle_role = AngleRole::MeasurementSetting;
  double alpha = 0.0;
  double beta = 0.0;
  std::array<double, 4> rate{};        // canonical pair order pp, pm, mp, mm
  std::array<bool, 4> observable{};

  double total_rate() const;
  double total_observable_rate() const;
};

AngleRole angle_role_of(ScenarioKind kind);

// Throws invalid_input_error for non-finite angles, an invalid source model,
// or a source model whose modulation does not match the scenario.
RateTable analytic_rates(ScenarioKind kind, double alpha, double beta,
                         const SourceModel& src);
// Convenience: builds the matching SourceModel for the scenario.
RateTable analytic_rates(ScenarioKind kind, double alpha, double beta,
                         double n0);

// The pi-shift identities: which shifted setting pair reproduces each
// outcome's rate through the (+,+) channel alone.
//   (+,+) -> (alpha,      beta)
//   (+,-) -> (alpha,      beta + pi)
//   (-,+) -> (alpha + pi, beta)
//   (-,-) -> (alpha + pi, beta + pi)
struct ShiftedSetting {
  OutcomePair pair;
  double alpha = 0.0;
  double beta = 0.0;
};

std::array<ShiftedSetting, 4> shifted_setting_identities(double alpha,
                                                         double beta);

const char* scenario_name(ScenarioKind kind);
ScenarioKind scenario_from_name(const std::string& name);  // throws invalid_input_error

}  // namespace bellsim
