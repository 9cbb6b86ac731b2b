#include "bellsim/scenarios.hpp"

#include <cmath>

namespace bellsim {

SourceModel SourceModel::constant(double n0) {
  SourceModel src{n0, Modulation::None};
  src.validate();
  return src;
}

SourceModel SourceModel::modulated(double n0) {
  SourceModel src{n0, Modulation::CosSquaredHalfSum};
  src.validate();
  return src;
}

SourceModel SourceModel::for_scenario(ScenarioKind kind, double n0) {
  switch (kind) {
    case ScenarioKind::StandardBell:
    case ScenarioKind::TwoDetector:
      return constant(n0);
    case ScenarioKind::SourceModulated:
    case ScenarioKind::FourPhotonEffective:
      return modulated(n0);
  }
  throw invalid_input_error("unknown scenario kind");
}

void SourceModel::validate() const {
  if (!std::isfinite(base_rate) || base_rate <= 0.0) {
    throw invalid_input_error("source base rate must be finite and > 0");
  }
}

double SourceModel::rate_at(double alpha, double beta) const {
  validate();
  if (modulation == Modulation::None) return base_rate;
  const double c = std::cos(0.5 * (alpha + beta));
  double factor = c * c;
  if (factor <= tol::zero_rate_snap) factor = 0.0;
  return base_rate * factor;
}

double RateTable::total_rate() const {
  return rate[0] + rate[1] + rate[2] + rate[3];
}

double RateTable::total_observable_rate() const {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (observable[i]) total += rate[i];
  }
  return total;
}

AngleRole angle_role_of(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::StandardBell:
    case ScenarioKind::TwoDetector:
      return AngleRole::MeasurementSetting;
    case ScenarioKind::SourceModulated:
    case ScenarioKind::FourPhotonEffective:
      return AngleRole::SourceControl;
  }
  throw invalid_input_error("unknown scenario kind");
}

namespace {

void require_finite(double angle, const char* name) {
  if (!std::isfinite(angle)) {
    throw invalid_input_error(std::string(name) + " must be finite");
  }
}

}  // namespace

RateTable analytic_rates(ScenarioKind kind, double alpha, double beta,
                         const SourceModel& src) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  src.validate();

  const Modulation expected = (angle_role_of(kind) == AngleRole::SourceControl)
                                  ? Modulation::CosSquaredHalfSum
                                  : Modulation::None;
  if (src.modulation != expected) {
    throw invalid_input_error(
        std::string("source modulation does not match scenario '") +
        scenario_name(kind) + "'");
  }

  RateTable table;
  table.kind = kind;
  table.angle_role = angle_role_of(kind);
  table.alpha = alpha;
  table.beta = beta;

  switch (kind) {
    case ScenarioKind::StandardBell:
    case ScenarioKind::TwoDetector: {
      // Rate convention: N(++) = N0 cos^2((alpha+beta)/2), i.e. twice the
      // joint probability per unit N0; the four rates total 2 N0.
      const std::array<double, 4> p =
          joint_probabilities(make_bell_state(), alpha, beta);
      for (int i = 0; i < 4; ++i) table.rate[i] = 2.0 * src.base_rate * p[i];
      if (kind == ScenarioKind::StandardBell) {
        table.observable = {true, true, true, true};
      } else {
        table.observable = {true, false, false, false};
      }
      break;
    }
    case ScenarioKind::SourceModulated:
    case ScenarioKind::FourPhotonEffective: {
      // PBS fixed at 0/0 on the unentangled state; the angles only steer the
      // emission rate. p is exactly (1, 0, 0, 0) here.
      const double emission = src.rate_at(alpha, beta);
      const std::array<double, 4> p =
          joint_probabilities(make_product_hh(), 0.0, 0.0);
      for (int i = 0; i < 4; ++i) table.rate[i] = emission * p[i];
      table.observable = {true, false, false, false};
      break;
    }
  }
  return table;
}

RateTable analytic_rates(ScenarioKind kind, double alpha, double beta,
                         double n0) {
  return analytic_rates(kind, alpha, beta, SourceModel::for_scenario(kind, n0));
}

std::array<ShiftedSetting, 4> shifted_setting_identities(double alpha,
                                                         double beta) {
  const double pi = std::acos(-1.0);
  std::array<ShiftedSetting, 4> map{};
  for (OutcomePair jk : all_outcome_pairs()) {
    ShiftedSetting s;
    s.pair = jk;
    s.alpha = (jk.a == Outcome::Minus) ? alpha + pi : alpha;
    s.beta = (jk.b == Outcome::Minus) ? beta + pi : beta;
    map[pair_index(jk)] = s;
  }
  return map;
}

const char* scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::StandardBell:
      return "standard";
    case ScenarioKind::TwoDetector:
      return "two-detector";
    case ScenarioKind::SourceModulated:
      return "source-modulated";
    case ScenarioKind::FourPhotonEffective:
      return "four-photon-effective";
  }
  return "unknown";
}

ScenarioKind scenario_from_name(const std::string& name) {
  for (ScenarioKind kind :
       {ScenarioKind::StandardBell, ScenarioKind::TwoDetector,
        ScenarioKind::SourceModulated, ScenarioKind::FourPhotonEffective}) {
    if (name == scenario_name(kind)) return kind;
  }
  throw invalid_input_error("unknown scenario '" + name + "'");
}

}  // namespace bellsim
