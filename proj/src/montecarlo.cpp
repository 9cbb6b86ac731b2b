#include "bellsim/montecarlo.hpp"

#include <cmath>

namespace bellsim {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_double() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

SamplerConfig SamplerConfig::fixed(std::uint64_t pairs, std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.mode = Mode::FixedPairs;
  cfg.fixed_pairs = pairs;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

SamplerConfig SamplerConfig::poisson(double exposure, std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.mode = Mode::PoissonExposure;
  cfg.exposure = exposure;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

void SamplerConfig::validate() const {
  switch (mode) {
    case Mode::FixedPairs:
      if (fixed_pairs == 0) {
        throw invalid_input_error("fixed_pairs must be > 0");
      }
      if (exposure != 0.0) {
        throw invalid_input_error(
            "exposure must be unset in fixed-pairs mode");
      }
      return;
    case Mode::PoissonExposure:
      if (!std::isfinite(exposure) || exposure <= 0.0) {
        throw invalid_input_error("exposure must be finite and > 0");
      }
      if (fixed_pairs != 0) {
        throw invalid_input_error(
            "fixed_pairs must be unset in poisson-exposure mode");
      }
      return;
  }
  throw invalid_input_error("unknown sampler mode");
}

namespace {

// Inversion is numerically safe only while exp(-mean) stays normal, so large
// means are sampled as sums of sub-Poisson draws with mean <= 500.
constexpr double kInversionChunk = 500.0;
constexpr double kNormalApproxCutoff = 1e6;

std::uint64_t poisson_inversion(double mean, SplitMix64& rng) {
  const double u = rng.next_double();
  double p = std::exp(-mean);
  double cum = p;
  std::uint64_t k = 0;
  // Bound the walk well past any probable value.
  const std::uint64_t cap =
      static_cast<std::uint64_t>(mean + 60.0 * std::sqrt(mean) + 100.0);
  while (u > cum && k < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cum += p;
  }
  return k;
}

std::uint64_t poisson_normal_approx(double mean, SplitMix64& rng) {
  // Box-Muller; u1 is kept away from 0.
  const double u1 = 1.0 - rng.next_double();
  const double u2 = rng.next_double();
  const double two_pi = 2.0 * std::acos(-1.0);
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  const double value = std::round(mean + std::sqrt(mean) * z);
  return value <= 0.0 ? 0ULL : static_cast<std::uint64_t>(value);
}

}  // namespace

std::uint64_t sample_poisson(double mean, SplitMix64& rng) {
  if (!std::isfinite(mean) || mean < 0.0) {
    throw invalid_input_error("poisson mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (mean > kNormalApproxCutoff) return poisson_normal_approx(mean, rng);
  if (mean <= kInversionChunk) return poisson_inversion(mean, rng);

  const int chunks = static_cast<int>(std::ceil(mean / kInversionChunk));
  const double chunk_mean = mean / chunks;
  std::uint64_t total = 0;
  for (int i = 0; i < chunks; ++i) total += poisson_inversion(chunk_mean, rng);
  return total;
}

std::uint64_t CoincidenceCounts::recorded_total() const {
  std::uint64_t total = 0;
  for (const auto& c : count) {
    if (c) total += *c;
  }
  return total;
}

CoincidenceCounts sample_counts(const RateTable& table,
                                const SamplerConfig& cfg) {
  cfg.validate();
  CoincidenceCounts out;
  out.alpha = table.alpha;
  out.beta = table.beta;
  out.seed = cfg.seed;
  out.kind = table.kind;

  SplitMix64 rng(cfg.seed);

  if (cfg.mode == SamplerConfig::Mode::FixedPairs) {
    const double total_rate = table.total_rate();
    double observable_rate = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (table.observable[i]) observable_rate += table.rate[i];
    }
    if (!(observable_rate > 0.0)) {
      throw degenerate_sampling_error(
          "no observable outcome has positive rate");
    }
    // Cumulative thresholds over all physical outcomes; draws falling on
    // unobservable outcomes are emitted pairs that no detector records.
    std::array<double, 4> cum{};
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      acc += table.rate[i] / total_rate;
      cum[i] = acc;
    }
    cum[3] = 1.0;

    std::array<std::uint64_t, 4> drawn{};
    for (std::uint64_t n = 0; n < cfg.fixed_pairs; ++n) {
      const double u = rng.next_double();
      int bin = 0;
      while (bin < 3 && u >= cum[bin]) ++bin;
      ++drawn[bin];
    }
    for (int i = 0; i < 4; ++i) {
      if (table.observable[i]) out.count[i] = drawn[i];
    }
    out.exposure = static_cast<double>(cfg.fixed_pairs) / total_rate;
  } else {
    for (int i = 0; i < 4; ++i) {
      if (!table.observable[i]) continue;
      out.count[i] = sample_poisson(table.rate[i] * cfg.exposure, rng);
    }
    out.exposure = cfg.exposure;
  }
  return out;
}

std::array<CoincidenceCounts, 4> acquire_quad_counts(ScenarioKind kind,
                                                     double alpha, double beta,
                                                     const SourceModel& src,
                                                     const SamplerConfig& cfg) {
  cfg.validate();
  if (cfg.mode != SamplerConfig::Mode::PoissonExposure) {
    // Fixing the emitted-pair count per acquisition is not equal exposure
    // once the source intensity depends on the setting.
    throw invalid_input_error(
        "acquire_quad requires the poisson-exposure sampler mode");
  }
  std::array<CoincidenceCounts, 4> acquisitions{};
  // Sequential acquisitions, equal exposure, sub-seeded by fixed offsets.
  std::uint64_t offset = 0;
  for (const ShiftedSetting& s : shifted_setting_identities(alpha, beta)) {
    SamplerConfig sub = cfg;
    sub.seed = cfg.seed + offset;
    ++offset;
    const RateTable table = analytic_rates(kind, s.alpha, s.beta, src);
    acquisitions[pair_index(s.pair)] = sample_counts(table, sub);
  }
  return acquisitions;
}

SettingQuadCounts acquire_quad(ScenarioKind kind, double alpha, double beta,
                               const SourceModel& src,
                               const SamplerConfig& cfg) {
  const std::array<CoincidenceCounts, 4> acquisitions =
      acquire_quad_counts(kind, alpha, beta, src, cfg);
  SettingQuadCounts quad;
  quad.alpha = alpha;
  quad.beta = beta;
  for (int i = 0; i < 4; ++i) {
    quad.pp_count[i] =
        acquisitions[i].count[0]
            ? static_cast<double>(*acquisitions[i].count[0])
            : 0.0;
  }
  return quad;
}

std::array<std::optional<OutcomeStdError>, 4> standard_errors(
    const CoincidenceCounts& counts) {
  const std::uint64_t n = counts.recorded_total();
  if (n == 0) {
    throw degenerate_normalization_error(
        "no recorded events; standard errors undefined");
  }
  std::array<std::optional<OutcomeStdError>, 4> se{};
  for (int i = 0; i < 4; ++i) {
    if (!counts.count[i]) continue;
    const double p = static_cast<double>(*counts.count[i]) /
                     static_cast<double>(n);
    OutcomeStdError entry;
    entry.value = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    entry.at_boundary = (p == 0.0 || p == 1.0);
    se[i] = entry;
  }
  return se;
}

}  // namespace bellsim
