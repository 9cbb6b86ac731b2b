#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "bellsim/estimators.hpp"
#include "bellsim/scenarios.hpp"

// Stochastic event generation: analytic RateTables turned into sampled
// CoincidenceCounts with reproducible, platform-independent randomness.
//
// The generator is SplitMix64 (state advances by the golden-gamma constant,
// output through a 64-bit finalizer). It is splittable by construction:
// every sampling call owns a private stream seeded from the config, and the
// four acquisitions of acquire_quad use seeds cfg.seed + {0,1,2,3}.

namespace bellsim {

// Deterministic 64-bit stream; identical sequences on every platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, 1) with 53-bit resolution.
  double next_double();

private:
  std::uint64_t state_;
};

struct SamplerConfig {
  enum class Mode { FixedPairs, PoissonExposure };

  Mode mode = Mode::FixedPairs;
  std::uint64_t fixed_pairs = 0;  // FixedPairs: number of emitted pairs
  double exposure = 0.0;          // PoissonExposure: unit time per acquisition
  std::uint64_t seed = 0;

  static SamplerConfig fixed(std::uint64_t pairs, std::uint64_t seed);
  static SamplerConfig poisson(double exposure, std::uint64_t seed);

  void validate() const;  // throws invalid_input_error
};

// Sampled event counts at one setting. Entries for outcomes with no detector
// pair are absent, which is different from a detector that saw nothing.
struct CoincidenceCounts {
  double alpha = 0.0;
  double beta = 0.0;
  std::array<std::optional<std::uint64_t>, 4> count{};
  // Exposure the counts correspond to. In PoissonExposure mode this is the
  // configured exposure; in FixedPairs mode it is the effective exposure
  // fixed_pairs / total physical rate, so count/exposure estimates the rate
  // in both modes.
  double exposure = 0.0;
  std::uint64_t seed = 0;
  ScenarioKind kind = ScenarioKind::StandardBell;

  std::uint64_t recorded_total() const;
};

// FixedPairs: a multinomial draw of cfg.fixed_pairs emitted pairs over the
// four outcomes with probabilities proportional to the physical rates;
// events landing on unobservable outcomes are discarded, shrinking the
// recorded total. Throws degenerate_sampling_error when no observable
// outcome has positive rate.
//
// PoissonExposure: an independent Poisson draw per observable outcome with
// mean rate * exposure.
//
// Deterministic given (table, cfg).
CoincidenceCounts sample_counts(const RateTable& table,
                                const SamplerConfig& cfg);

// Four equal-exposure acquisitions at the pi-shifted settings of (alpha,
// beta), sub-seeded cfg.seed + {0,1,2,3}, in reconstructed-pair order.
// Requires PoissonExposure mode: a fixed emitted-pair count per acquisition
// would not hold exposure equal for a setting-dependent source intensity.
std::array<CoincidenceCounts, 4> acquire_quad_counts(ScenarioKind kind,
                                                     double alpha, double beta,
                                                     const SourceModel& src,
                                                     const SamplerConfig& cfg);

// The (+,+) counts of the four acquisitions.
SettingQuadCounts acquire_quad(ScenarioKind kind, double alpha, double beta,
                               const SourceModel& src,
                               const SamplerConfig& cfg);

struct OutcomeStdError {
  double value = 0.0;
  bool at_boundary = false;  // estimated frequency was exactly 0 or 1
};

// Binomial standard error sqrt(p*(1-p)/n) per observable outcome, with n the
// recorded total. Throws degenerate_normalization_error when n is zero.
std::array<std::optional<OutcomeStdError>, 4> standard_errors(
    const CoincidenceCounts& counts);

// Poisson sampler used by the exposure mode: chunked inversion up to mean
// 1e6, normal approximation above (documented cutoff; the approximation
// error is far below counting noise at that scale).
std::uint64_t sample_poisson(double mean, SplitMix64& rng);

}  // namespace bellsim
