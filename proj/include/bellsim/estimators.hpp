#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "bellsim/scenarios.hpp"

// Normalization schemes, correlation functions, the Bell parameter, and a
// deterministic CHSH optimizer.
//
// Correlations are always computed from a ProbabilityTable, never from raw
// counts, so the choice of NormalizationScheme is the single point where the
// estimators can diverge.

namespace bellsim {

enum class NormalizationScheme { Standard, Tilde, Q };

const char* scheme_name(NormalizationScheme scheme);
NormalizationScheme scheme_from_name(const std::string& name);  // throws invalid_input_error

// Four normalized values in canonical pair order; sums to 1.
struct ProbabilityTable {
  std::array<double, 4> p{};
  NormalizationScheme scheme = NormalizationScheme::Standard;
  double alpha = 0.0;
  double beta = 0.0;

  double sum() const { return p[0] + p[1] + p[2] + p[3]; }
};

// The four angles entering the Bell parameter.
struct BellSettings {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
};

// (+,+) counts (or rates) acquired at the four pi-shifted settings of one
// base setting, indexed by the outcome pair each shifted acquisition
// reconstructs.
struct SettingQuadCounts {
  double alpha = 0.0;
  double beta = 0.0;
  std::array<double, 4> pp_count{};

  double total() const {
    return pp_count[0] + pp_count[1] + pp_count[2] + pp_count[3];
  }
};

// p(jk) = N(jk) / sum_jk N(jk), over the physical rates of the table
// (observability flags are ignored: this is the four-detector normalization).
// Throws degenerate_normalization_error on an all-zero table.
ProbabilityTable normalize_standard(const RateTable& table);

// tilde-p(jk) = (+,+) count at the jk-shifted setting / sum over the quad.
// The label parameter is Tilde for a genuine shifted-setting reconstruction
// and Q when the same arithmetic is applied to source-control angles.
// Throws degenerate_normalization_error when the quad total is zero.
ProbabilityTable normalize_tilde(const SettingQuadCounts& quad,
                                 NormalizationScheme label =
                                     NormalizationScheme::Tilde);

// Closed form of the tilde construction over the modulated product-state
// source: ((1+c)/4, (1-c)/4, (1-c)/4, (1+c)/4) with c = cos(alpha'+beta').
ProbabilityTable q_functions(double alpha_p, double beta_p);

// Builds the quad of analytic (+,+) rates at the four shifted settings.
SettingQuadCounts analytic_quad_counts(ScenarioKind kind, double alpha,
                                       double beta, const SourceModel& src);

// E = p(++) - p(-+) - p(+-) + p(--)
double correlation(const ProbabilityTable& table);

// B = |-E11 + E12 + E21 + E22|, the minus on the (alpha1, beta1) term.
// Each correlation must satisfy |e| <= 1 + tol::correlation_range.
double bell_parameter(double e11, double e12, double e21, double e22);

// Correlation of one scenario/scheme at one setting pair. Standard uses the
// analytic rate table; Tilde and Q use the shifted-setting quad. Throws
// degenerate_normalization_error at excluded zero-rate points.
double correlation_at(ScenarioKind kind, NormalizationScheme scheme,
                      double alpha, double beta, const SourceModel& src);

struct ChshResult {
  BellSettings settings;
  std::array<double, 4> correlations{};  // E11, E12, E21, E22
  double bell_value = 0.0;
  std::size_t grid_points_skipped = 0;  // degenerate settings excluded
};

// Deterministic maximization of B over [0, 2*pi)^4: a coarse grid of
// grid_density points per axis, then coordinate-wise golden-section
// refinement. The result is never below the best grid value. Degenerate
// grid settings are skipped and counted. Requires grid_density >= 8.
ChshResult chsh_optimize(ScenarioKind kind, NormalizationScheme scheme,
                         int grid_density, double refinement_tolerance,
                         double n0 = 1.0);

}  // namespace bellsim
