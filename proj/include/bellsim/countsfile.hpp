#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bellsim/estimators.hpp"
#include "bellsim/montecarlo.hpp"

// Counts-file ingestion and the audit computation behind the `audit`
// subcommand. A counts file is CSV with the fixed header
// alpha,beta,outcome,count,exposure and one row per (setting, outcome).

namespace bellsim {

struct CountsFileRow {
  double alpha = 0.0;
  double beta = 0.0;
  OutcomePair outcome;
  std::uint64_t count = 0;
  double exposure = 1.0;
};

// Throws malformed_row_error (with 1-based line number) on any bad row or
// header, and error if the file cannot be opened.
std::vector<CountsFileRow> read_counts_file(const std::string& path);

void write_counts_header(std::ostream& out);
void write_counts_row(std::ostream& out, const CountsFileRow& row);

// Rows for every observable outcome of one sampled setting.
std::vector<CountsFileRow> counts_to_rows(const CoincidenceCounts& counts);

// Shortest round-trip decimal form of a double, used by all CSV output.
std::string format_double(double value);

// Counts aggregated per distinct setting (matched within kSettingMatchTol).
struct SettingCounts {
  double alpha = 0.0;
  double beta = 0.0;
  std::array<double, 4> count{};
  std::array<double, 4> exposure{};
  std::array<bool, 4> present{};

  double rate(int pair_idx) const;
  double total_rate() const;
  double total_count() const;
};

inline constexpr double kSettingMatchTol = 1e-9;

std::vector<SettingCounts> aggregate_rows(
    const std::vector<CountsFileRow>& rows);

// Per-setting flatness of the total recorded rate, the fingerprint of a
// source whose intensity follows the control angles. Applicable to the
// tilde/q schemes, whose normalization silently assumes equivalent
// acquisitions across settings.
struct FlatnessCheck {
  bool applicable = false;
  double threshold_sigma = 3.0;
  double mean_rate = 0.0;
  double max_deviation_sigma = 0.0;
  bool warn = false;

  struct Entry {
    double alpha = 0.0;
    double beta = 0.0;
    double rate = 0.0;
    double deviation_sigma = 0.0;
  };
  std::vector<Entry> entries;
};

struct AuditSetting {
  ProbabilityTable table;
  double correlation_value = 0.0;
};

struct AuditReport {
  NormalizationScheme scheme = NormalizationScheme::Standard;
  std::vector<SettingCounts> settings;
  std::vector<AuditSetting> tables;
  std::size_t degenerate_settings = 0;  // zero-total settings skipped

  bool has_bell = false;
  BellSettings bell_settings;
  std::array<double, 4> correlations{};
  double bell_value = 0.0;

  FlatnessCheck flatness;
};

// Computes probability tables and, when the settings form a 2x2 grid, the
// Bell parameter. For Tilde/Q the tables are built per base setting from the
// pi-shifted partners; throws missing_partner_error when no complete quad
// exists. The Bell sign convention puts the minus on the first-appearing
// alpha and beta.
AuditReport audit_counts(const std::vector<CountsFileRow>& rows,
                         NormalizationScheme scheme,
                         double flatness_sigma = 3.0);

}  // namespace bellsim
