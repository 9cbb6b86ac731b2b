// bellsim: analytic tables, CHSH optimization, Monte Carlo sampling and
// counts-file audits for idealized polarization coincidence experiments.
//
// Exit codes: 0 ok, 2 invalid arguments, 3 degenerate normalization or
// sampling, 4 unwritable output path, 5 malformed counts-file row,
// 6 missing shifted-setting partners.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellsim/countsfile.hpp"
#include "bellsim/estimators.hpp"
#include "bellsim/lhv.hpp"
#include "bellsim/manifest.hpp"
#include "bellsim/montecarlo.hpp"
#include "bellsim/scenarios.hpp"
#include "bellsim/version.hpp"

namespace {

using nlohmann::ordered_json;
using namespace bellsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitUnwritable = 4;
constexpr int kExitMalformedRow = 5;
constexpr int kExitMissingPartner = 6;

class unwritable_path_error : public error {
public:
  using error::error;
};

std::string fmt6(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv("BELLSIM_SEED")) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || errno == ERANGE) {
      throw invalid_input_error(std::string("BELLSIM_SEED value '") + env +
                                "' is not a 64-bit unsigned integer");
    }
    return value;
  }
  return 1;
}

double angle_in(double value, bool degrees) {
  return degrees ? value * std::acos(-1.0) / 180.0 : value;
}

const char* angle_role_name(AngleRole role) {
  return role == AngleRole::MeasurementSetting ? "measurement-setting"
                                               : "source-control";
}

ProbabilityTable table_for(ScenarioKind kind, NormalizationScheme scheme,
                           double alpha, double beta, const SourceModel& src) {
  switch (scheme) {
    case NormalizationScheme::Standard:
      return normalize_standard(analytic_rates(kind, alpha, beta, src));
    case NormalizationScheme::Tilde:
    case NormalizationScheme::Q:
      return normalize_tilde(analytic_quad_counts(kind, alpha, beta, src),
                             scheme);
  }
  throw invalid_input_error("unknown normalization scheme");
}

// ---------------------------------------------------------------- analytic

struct AnalyticArgs {
  std::string scenario = "standard";
  std::string scheme = "standard";
  double alpha = 0.0;
  double beta = 0.0;
  double n0 = 1000.0;
  bool degrees = false;
};

int run_analytic(const AnalyticArgs& args) {
  const ScenarioKind kind = scenario_from_name(args.scenario);
  const NormalizationScheme scheme = scheme_from_name(args.scheme);
  const double alpha = angle_in(args.alpha, args.degrees);
  const double beta = angle_in(args.beta, args.degrees);
  const SourceModel src = SourceModel::for_scenario(kind, args.n0);
  const RateTable rates = analytic_rates(kind, alpha, beta, src);

  std::cout << "scenario: " << scenario_name(kind) << "\n";
  std::cout << "angles:   alpha=" << format_double(alpha)
            << " beta=" << format_double(beta) << " ("
            << angle_role_name(rates.angle_role) << ")\n";
  std::cout << "N0:       " << format_double(args.n0) << "\n";
  std::cout << "rates per unit exposure:\n";
  for (OutcomePair jk : all_outcome_pairs()) {
    const int i = pair_index(jk);
    std::cout << "  N(" << outcome_label(jk) << ") = "
              << format_double(rates.rate[i])
              << (rates.observable[i] ? "" : "   [no detector pair]") << "\n";
  }
  std::cout << "  total = " << format_double(rates.total_rate()) << "\n";

  const ProbabilityTable table = table_for(kind, scheme, alpha, beta, src);
  std::cout << "scheme:   " << scheme_name(scheme) << "\n";
  for (OutcomePair jk : all_outcome_pairs()) {
    std::cout << "  p(" << outcome_label(jk) << ") = "
              << fmt6(table.p[pair_index(jk)]) << "\n";
  }
  std::cout << "E = " << fmt6(correlation(table)) << "\n";
  return kExitOk;
}

// -------------------------------------------------------------------- chsh

struct ChshArgs {
  std::string scenario = "standard";
  std::string scheme = "standard";
  std::vector<double> angles;  // alpha1 alpha2 beta1 beta2
  bool optimize = false;
  int grid = 32;
  double refine_tol = 1e-6;
  double n0 = 1000.0;
  bool degrees = false;
};

void print_chsh_block(const BellSettings& s, const std::array<double, 4>& e,
                      double b) {
  std::cout << "settings: alpha1=" << fmt6(s.alpha1)
            << " alpha2=" << fmt6(s.alpha2) << " beta1=" << fmt6(s.beta1)
            << " beta2=" << fmt6(s.beta2) << "\n";
  std::cout << "E(alpha1,beta1) = " << fmt6(e[0]) << "\n";
  std::cout << "E(alpha1,beta2) = " << fmt6(e[1]) << "\n";
  std::cout << "E(alpha2,beta1) = " << fmt6(e[2]) << "\n";
  std::cout << "E(alpha2,beta2) = " << fmt6(e[3]) << "\n";
  std::cout << "B = " << fmt6(b) << "\n";
}

int run_chsh(const ChshArgs& args) {
  const ScenarioKind kind = scenario_from_name(args.scenario);
  const NormalizationScheme scheme = scheme_from_name(args.scheme);
  std::cout << "scenario: " << scenario_name(kind) << "\n";
  std::cout << "scheme:   " << scheme_name(scheme) << "\n";

  if (args.optimize) {
    const ChshResult result =
        chsh_optimize(kind, scheme, args.grid, args.refine_tol, args.n0);
    std::cout << "optimize: grid " << args.grid
              << "^4 + golden-section refinement, degenerate settings "
                 "skipped: "
              << result.grid_points_skipped << "\n";
    print_chsh_block(result.settings, result.correlations, result.bell_value);
    return kExitOk;
  }

  if (args.angles.size() != 4) {
    throw invalid_input_error(
        "chsh needs --angles alpha1 alpha2 beta1 beta2 or --optimize");
  }
  const BellSettings settings{
      angle_in(args.angles[0], args.degrees),
      angle_in(args.angles[1], args.degrees),
      angle_in(args.angles[2], args.degrees),
      angle_in(args.angles[3], args.degrees),
  };
  const SourceModel src = SourceModel::for_scenario(kind, args.n0);

  std::array<double, 4> e{};
  std::vector<std::string> degenerate;
  const std::array<std::pair<double, double>, 4> pairs = {{
      {settings.alpha1, settings.beta1},
      {settings.alpha1, settings.beta2},
      {settings.alpha2, settings.beta1},
      {settings.alpha2, settings.beta2},
  }};
  for (int i = 0; i < 4; ++i) {
    try {
      e[i] = correlation_at(kind, scheme, pairs[i].first, pairs[i].second, src);
    } catch (const degenerate_normalization_error&) {
      degenerate.push_back("(" + fmt6(pairs[i].first) + ", " +
                           fmt6(pairs[i].second) + ")");
    }
  }
  if (!degenerate.empty()) {
    std::string which;
    for (const std::string& d : degenerate) {
      if (!which.empty()) which += ", ";
      which += d;
    }
    throw degenerate_normalization_error(
        "degenerate setting pair(s) " + which +
        "; the Bell parameter is undefined there");
  }
  print_chsh_block(settings, e, bell_parameter(e[0], e[1], e[2], e[3]));
  return kExitOk;
}

// -------------------------------------------------------------------- scan

struct ScanArgs {
  std::string scenario = "standard";
  std::string scheme = "standard";
  int points = 49;
  double sum_min = 0.0;
  double sum_max = 2.0 * std::acos(-1.0);
  double n0 = 1000.0;
  std::string out;
  bool degrees = false;
};

int run_scan(const ScanArgs& args, const std::vector<std::string>& argv) {
  const ScenarioKind kind = scenario_from_name(args.scenario);
  const NormalizationScheme scheme = scheme_from_name(args.scheme);
  if (args.points < 0) throw invalid_input_error("--points must be >= 0");
  const double lo = angle_in(args.sum_min, args.degrees);
  const double hi = angle_in(args.sum_max, args.degrees);
  const SourceModel src = SourceModel::for_scenario(kind, args.n0);

  std::ofstream out(args.out, std::ios::binary);
  if (!out) {
    throw unwritable_path_error("cannot write '" + args.out + "'");
  }
  out << kScanCsvHeader << '\n';

  std::size_t skipped = 0;
  for (int k = 0; k < args.points; ++k) {
    const double sum =
        (args.points == 1) ? lo : lo + (hi - lo) * k / (args.points - 1);
    const double alpha = 0.5 * sum;
    const double beta = 0.5 * sum;
    ProbabilityTable table;
    try {
      table = table_for(kind, scheme, alpha, beta, src);
    } catch (const degenerate_normalization_error&) {
      ++skipped;
      continue;
    }
    out << format_double(alpha) << ',' << format_double(beta) << ','
        << format_double(table.p[0]) << ',' << format_double(table.p[2]) << ','
        << format_double(table.p[1]) << ',' << format_double(table.p[3]) << ','
        << format_double(correlation(table)) << '\n';
  }
  out.flush();
  if (!out) {
    throw unwritable_path_error("write failed for '" + args.out + "'");
  }

  RunManifest manifest;
  manifest.command = "scan";
  manifest.argv = argv;
  manifest.outputs = {args.out};
  manifest.file_schema = kScanCsvSchema;
  write_manifest_sidecar(manifest, args.out);

  if (skipped > 0) {
    std::cerr << "note: " << skipped
              << " degenerate grid point(s) skipped (zero total rate)\n";
  }
  std::cout << "wrote " << args.out << " (" << (args.points - skipped)
            << " rows)\n";
  return kExitOk;
}

// ------------------------------------------------------------------ sample

struct SampleArgs {
  std::string scenario = "standard";
  double alpha = 0.0;
  double beta = 0.0;
  double n0 = 1000.0;
  std::string mode = "fixed-pairs";
  std::uint64_t pairs = 1000000;
  double exposure = 0.0;
  std::optional<std::uint64_t> seed;
  bool quad = false;
  std::string out;
  bool degrees = false;
};

SamplerConfig sampler_from_args(const SampleArgs& args, std::uint64_t seed) {
  if (args.mode == "fixed-pairs") {
    return SamplerConfig::fixed(args.pairs, seed);
  }
  if (args.mode == "poisson") {
    if (args.exposure <= 0.0) {
      throw invalid_input_error("poisson mode needs --exposure > 0");
    }
    return SamplerConfig::poisson(args.exposure, seed);
  }
  throw invalid_input_error("unknown sampler mode '" + args.mode +
                            "' (expected fixed-pairs or poisson)");
}

ordered_json counts_json(const CoincidenceCounts& counts) {
  ordered_json j = ordered_json::object();
  for (OutcomePair jk : all_outcome_pairs()) {
    const int i = pair_index(jk);
    if (counts.count[i]) j[outcome_label(jk)] = *counts.count[i];
  }
  return j;
}

int run_sample(const SampleArgs& args) {
  const ScenarioKind kind = scenario_from_name(args.scenario);
  const double alpha = angle_in(args.alpha, args.degrees);
  const double beta = angle_in(args.beta, args.degrees);
  const std::uint64_t seed = resolve_seed(args.seed);
  const SamplerConfig cfg = sampler_from_args(args, seed);
  const SourceModel src = SourceModel::for_scenario(kind, args.n0);

  // Resolved argv (explicit seed, radians) so a manifest re-run is exact.
  std::vector<std::string> argv = {"sample",
          "--scenario", scenario_name(kind),
          "--alpha", format_double(alpha),
          "--beta", format_double(beta),
          "--n0", format_double(args.n0),
          "--mode", args.mode,
          "--seed", std::to_string(seed)};
  if (cfg.mode == SamplerConfig::Mode::FixedPairs) {
    argv.push_back("--pairs");
    argv.push_back(std::to_string(cfg.fixed_pairs));
  } else {
    argv.push_back("--exposure");
    argv.push_back(format_double(cfg.exposure));
  }
  if (args.quad) argv.push_back("--quad");
  if (!args.out.empty()) {
    argv.push_back("--out");
    argv.push_back(args.out);
  }

  RunManifest manifest;
  manifest.command = "sample";
  manifest.argv = argv;
  if (!args.out.empty()) {
    manifest.outputs = {args.out};
    manifest.file_schema = kCountsCsvSchema;
  }

  ordered_json record;
  record["schema"] = kSampleSchema;
  record["record"] = args.quad ? "shifted-quad" : "single-setting";
  record["scenario"] = scenario_name(kind);
  record["angle_role"] = angle_role_name(angle_role_of(kind));
  record["alpha"] = alpha;
  record["beta"] = beta;
  record["n0"] = args.n0;
  ordered_json sampler;
  sampler["mode"] = args.mode;
  if (cfg.mode == SamplerConfig::Mode::FixedPairs) {
    sampler["fixed_pairs"] = cfg.fixed_pairs;
  } else {
    sampler["exposure"] = cfg.exposure;
  }
  sampler["seed"] = seed;
  record["sampler"] = sampler;

  std::vector<CountsFileRow> csv_rows;

  if (args.quad) {
    const std::array<CoincidenceCounts, 4> acquisitions =
        acquire_quad_counts(kind, alpha, beta, src, cfg);
    record["acquisition"] = "sequential-equal-exposure";
    ordered_json list = ordered_json::array();
    for (OutcomePair jk : all_outcome_pairs()) {
      const int i = pair_index(jk);
      const CoincidenceCounts& c = acquisitions[i];
      ordered_json entry;
      entry["reconstructs"] = outcome_label(jk);
      entry["alpha"] = c.alpha;
      entry["beta"] = c.beta;
      entry["seed"] = c.seed;
      entry["exposure"] = c.exposure;
      entry["pp_count"] = c.count[0] ? ordered_json(*c.count[0])
                                     : ordered_json(nullptr);
      list.push_back(entry);
      const std::vector<CountsFileRow> rows = counts_to_rows(c);
      csv_rows.insert(csv_rows.end(), rows.begin(), rows.end());
    }
    record["acquisitions"] = list;
  } else {
    const RateTable table = analytic_rates(kind, alpha, beta, src);
    const CoincidenceCounts counts = sample_counts(table, cfg);
    record["exposure"] = counts.exposure;
    record["counts"] = counts_json(counts);
    record["recorded_total"] = counts.recorded_total();
    ordered_json freq = ordered_json::object();
    ordered_json se = ordered_json::object();
    const std::uint64_t total = counts.recorded_total();
    if (total > 0) {
      const auto errors = standard_errors(counts);
      for (OutcomePair jk : all_outcome_pairs()) {
        const int i = pair_index(jk);
        if (!counts.count[i]) continue;
        freq[outcome_label(jk)] =
            static_cast<double>(*counts.count[i]) / static_cast<double>(total);
        ordered_json entry;
        entry["value"] = errors[i]->value;
        entry["at_boundary"] = errors[i]->at_boundary;
        se[outcome_label(jk)] = entry;
      }
    }
    record["frequencies"] = freq;
    record["standard_errors"] = se;
    csv_rows = counts_to_rows(counts);
  }

  // Timestamp-free manifest keeps the record byte-identical per seed.
  record["manifest"] = manifest.to_json(/*with_timestamp=*/false);
  std::cout << record.dump(2) << "\n";

  if (!args.out.empty()) {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) {
      throw unwritable_path_error("cannot write '" + args.out + "'");
    }
    write_counts_header(out);
    for (const CountsFileRow& row : csv_rows) write_counts_row(out, row);
    out.flush();
    if (!out) {
      throw unwritable_path_error("write failed for '" + args.out + "'");
    }
    write_manifest_sidecar(manifest, args.out);
  }
  return kExitOk;
}

// ------------------------------------------------------------------- audit

struct AuditArgs {
  std::string file;
  std::string scheme = "standard";
  double flatness_sigma = 3.0;
};

int run_audit(const AuditArgs& args) {
  const NormalizationScheme scheme = scheme_from_name(args.scheme);
  if (!(args.flatness_sigma > 0.0)) {
    throw invalid_input_error("--flatness-sigma must be > 0");
  }
  const std::vector<CountsFileRow> rows = read_counts_file(args.file);
  const AuditReport report = audit_counts(rows, scheme, args.flatness_sigma);

  std::cout << "audit of '" << args.file << "' (scheme: "
            << scheme_name(scheme) << ")\n";
  std::cout << "rows: " << rows.size()
            << "   settings: " << report.settings.size()
            << "   tables: " << report.tables.size() << "\n";
  if (report.degenerate_settings > 0) {
    std::cout << "degenerate settings skipped: " << report.degenerate_settings
              << "\n";
  }
  for (const AuditSetting& t : report.tables) {
    std::cout << "setting alpha=" << fmt6(t.table.alpha)
              << " beta=" << fmt6(t.table.beta) << ":";
    for (OutcomePair jk : all_outcome_pairs()) {
      std::cout << "  p(" << outcome_label(jk) << ")=" <<
          fmt6(t.table.p[pair_index(jk)]);
    }
    std::cout << "  E=" << fmt6(t.correlation_value) << "\n";
  }

  if (report.has_bell) {
    std::cout << "bell settings: alpha1=" << fmt6(report.bell_settings.alpha1)
              << " alpha2=" << fmt6(report.bell_settings.alpha2)
              << " beta1=" << fmt6(report.bell_settings.beta1)
              << " beta2=" << fmt6(report.bell_settings.beta2) << "\n";
    std::cout << "B = " << fmt6(report.bell_value) << "\n";
  } else {
    std::cout << "B: not computed (settings do not form a 2x2 grid of "
                 "alphas and betas)\n";
  }

  if (report.flatness.applicable && report.flatness.entries.size() >= 2) {
    if (report.flatness.warn) {
      std::cout << "WARNING: per-setting total event rate varies with the "
                   "settings\n";
      std::cout << "  max deviation " << fmt6(report.flatness.max_deviation_sigma)
                << " sigma (threshold " << fmt6(report.flatness.threshold_sigma)
                << "), mean rate " << fmt6(report.flatness.mean_rate) << "\n";
      std::cout << "  tilde/q normalization assumes acquisitions of one "
                   "ensemble; with setting-dependent\n"
                   "  totals the normalized values are not outcome "
                   "probabilities at fixed settings\n"
                   "  and the Bell parameter above carries no LHV-bound "
                   "significance\n";
    } else {
      std::cout << "total-rate flatness: consistent across settings (max "
                   "deviation "
                << fmt6(report.flatness.max_deviation_sigma) << " sigma <= "
                << fmt6(report.flatness.threshold_sigma) << ")\n";
    }
  }
  return kExitOk;
}

// --------------------------------------------------------------------- lhv

int run_lhv() {
  std::cout << "deterministic local strategies (a1 a2 b1 b2 -> B):\n";
  double max_value = 0.0;
  std::size_t n = 0;
  for (const DeterministicStrategy& s : enumerate_strategies()) {
    const double value = strategy_bell_value(s);
    max_value = std::max(max_value, value);
    ++n;
    std::printf("  %+d %+d %+d %+d -> %g\n", s.a1, s.a2, s.b1, s.b2, value);
  }
  std::cout << "strategies: " << n << "\n";
  std::cout << "max value: " << max_value << "\n";
  std::cout << "LHV bound: " << lhv_bound() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-test scenario simulator and statistics toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("bellsim ") + kToolVersion);

  AnalyticArgs analytic_args;
  CLI::App* analytic = app.add_subcommand(
      "analytic", "Analytic rate and probability tables at one setting");
  analytic->add_option("--scenario", analytic_args.scenario,
                       "standard | two-detector | source-modulated | "
                       "four-photon-effective");
  analytic->add_option("--scheme", analytic_args.scheme,
                       "standard | tilde | q");
  analytic->add_option("--alpha", analytic_args.alpha, "Alice angle");
  analytic->add_option("--beta", analytic_args.beta, "Bob angle");
  analytic->add_option("--n0", analytic_args.n0, "source base rate");
  analytic->add_flag("--degrees", analytic_args.degrees,
                     "interpret input angles as degrees");

  ChshArgs chsh_args;
  CLI::App* chsh = app.add_subcommand(
      "chsh", "Bell parameter at four settings, or its maximization");
  chsh->add_option("--scenario", chsh_args.scenario, "scenario");
  chsh->add_option("--scheme", chsh_args.scheme, "normalization scheme");
  chsh->add_option("--angles", chsh_args.angles,
                   "alpha1 alpha2 beta1 beta2")
      ->expected(4);
  chsh->add_flag("--optimize", chsh_args.optimize,
                 "maximize B over settings");
  chsh->add_option("--grid", chsh_args.grid, "grid density (>= 8)");
  chsh->add_option("--refine-tol", chsh_args.refine_tol,
                   "refinement tolerance");
  chsh->add_option("--n0", chsh_args.n0, "source base rate");
  chsh->add_flag("--degrees", chsh_args.degrees,
                 "interpret input angles as degrees");

  ScanArgs scan_args;
  CLI::App* scan = app.add_subcommand(
      "scan", "CSV sweep of probabilities and E over the alpha+beta sum");
  scan->add_option("--scenario", scan_args.scenario, "scenario");
  scan->add_option("--scheme", scan_args.scheme, "normalization scheme");
  scan->add_option("--points", scan_args.points, "number of grid points");
  scan->add_option("--sum-min", scan_args.sum_min, "first alpha+beta value");
  scan->add_option("--sum-max", scan_args.sum_max, "last alpha+beta value");
  scan->add_option("--n0", scan_args.n0, "source base rate");
  scan->add_option("--out", scan_args.out, "output CSV path")->required();
  scan->add_flag("--degrees", scan_args.degrees,
                 "interpret input angles as degrees");

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand(
      "sample", "Monte Carlo coincidence counts at one setting");
  sample->add_option("--scenario", sample_args.scenario, "scenario");
  sample->add_option("--alpha", sample_args.alpha, "Alice angle");
  sample->add_option("--beta", sample_args.beta, "Bob angle");
  sample->add_option("--n0", sample_args.n0, "source base rate");
  sample->add_option("--mode", sample_args.mode, "fixed-pairs | poisson");
  CLI::Option* pairs_opt = sample->add_option(
      "--pairs", sample_args.pairs, "emitted pairs (fixed-pairs mode)");
  CLI::Option* exposure_opt = sample->add_option(
      "--exposure", sample_args.exposure, "exposure time (poisson mode)");
  std::uint64_t seed_flag = 0;
  CLI::Option* seed_opt =
      sample->add_option("--seed", seed_flag,
                         "sampler seed (default: BELLSIM_SEED env, else 1)");
  sample->add_flag("--quad", sample_args.quad,
                   "acquire the four pi-shifted settings");
  sample->add_option("--out", sample_args.out, "also write counts CSV here");
  sample->add_flag("--degrees", sample_args.degrees,
                   "interpret input angles as degrees");

  AuditArgs audit_args;
  CLI::App* audit = app.add_subcommand(
      "audit", "Normalize and flatness-check an external counts file");
  audit->add_option("file", audit_args.file, "counts CSV file")->required();
  audit->add_option("--scheme", audit_args.scheme, "normalization scheme");
  audit->add_option("--flatness-sigma", audit_args.flatness_sigma,
                    "warning threshold on total-rate deviation");

  CLI::App* lhv = app.add_subcommand(
      "lhv", "Enumerate deterministic local strategies and their bound");

  std::vector<std::string> raw_argv(argv + 1, argv + argc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (seed_opt->count() > 0) sample_args.seed = seed_flag;

  try {
    if (sample->parsed()) {
      if (sample_args.mode == "fixed-pairs" && exposure_opt->count() > 0) {
        throw invalid_input_error("--exposure requires --mode poisson");
      }
      if (sample_args.mode == "poisson" && pairs_opt->count() > 0) {
        throw invalid_input_error("--pairs requires --mode fixed-pairs");
      }
    }
    if (analytic->parsed()) return run_analytic(analytic_args);
    if (chsh->parsed()) return run_chsh(chsh_args);
    if (scan->parsed()) return run_scan(scan_args, raw_argv);
    if (sample->parsed()) return run_sample(sample_args);
    if (audit->parsed()) return run_audit(audit_args);
    if (lhv->parsed()) return run_lhv();
  } catch (const unwritable_path_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnwritable;
  } catch (const malformed_row_error& e) {
    std::cerr << "error: line " << e.line() << ": " << e.what() << "\n";
    return kExitMalformedRow;
  } catch (const missing_partner_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingPartner;
  } catch (const degenerate_normalization_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const degenerate_sampling_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const invalid_input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
