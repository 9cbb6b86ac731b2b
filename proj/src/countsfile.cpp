#include "bellsim/countsfile.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bellsim/version.hpp"

namespace bellsim {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double_field(const std::string& field, const char* name,
                          long line) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0' || errno == ERANGE ||
      !std::isfinite(value)) {
    throw malformed_row_error(
        std::string("bad ") + name + " value '" + field + "'", line);
  }
  return value;
}

std::uint64_t parse_count_field(const std::string& field, long line) {
  if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos) {
    throw malformed_row_error("bad count value '" + field + "'", line);
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(field.c_str(), &end, 10);
  if (errno == ERANGE) {
    throw malformed_row_error("count value '" + field + "' out of range", line);
  }
  return static_cast<std::uint64_t>(value);
}

void strip_trailing_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::vector<CountsFileRow> read_counts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw error("cannot open counts file '" + path + "'");
  }
  std::string line;
  long line_no = 0;

  if (!std::getline(in, line)) {
    throw malformed_row_error("empty counts file (missing header)", 1);
  }
  ++line_no;
  strip_trailing_cr(line);
  if (line != kCountsCsvHeader) {
    throw malformed_row_error(
        std::string("bad header; expected '") + kCountsCsvHeader + "'",
        line_no);
  }

  std::vector<CountsFileRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    strip_trailing_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw malformed_row_error("expected 5 fields, found " +
                                    std::to_string(fields.size()),
                                line_no);
    }
    CountsFileRow row;
    row.alpha = parse_double_field(fields[0], "alpha", line_no);
    row.beta = parse_double_field(fields[1], "beta", line_no);
    try {
      row.outcome = outcome_from_label(fields[2]);
    } catch (const invalid_input_error& e) {
      throw malformed_row_error(e.what(), line_no);
    }
    row.count = parse_count_field(fields[3], line_no);
    row.exposure = parse_double_field(fields[4], "exposure", line_no);
    if (row.exposure <= 0.0) {
      throw malformed_row_error("exposure must be > 0", line_no);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_double(double value) {
  char buffer[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) break;
  }
  return buffer;
}

void write_counts_header(std::ostream& out) {
  out << kCountsCsvHeader << '\n';
}

void write_counts_row(std::ostream& out, const CountsFileRow& row) {
  out << format_double(row.alpha) << ',' << format_double(row.beta) << ','
      << outcome_label(row.outcome) << ',' << row.count << ','
      << format_double(row.exposure) << '\n';
}

std::vector<CountsFileRow> counts_to_rows(const CoincidenceCounts& counts) {
  std::vector<CountsFileRow> rows;
  for (OutcomePair jk : all_outcome_pairs()) {
    const int idx = pair_index(jk);
    if (!counts.count[idx]) continue;  // no detector pair, no row
    CountsFileRow row;
    row.alpha = counts.alpha;
    row.beta = counts.beta;
    row.outcome = jk;
    row.count = *counts.count[idx];
    row.exposure = counts.exposure;
    rows.push_back(row);
  }
  return rows;
}

double SettingCounts::rate(int pair_idx) const {
  if (!present[pair_idx]) return 0.0;
  return count[pair_idx] / exposure[pair_idx];
}

double SettingCounts::total_rate() const {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (present[i]) total += rate(i);
  }
  return total;
}

double SettingCounts::total_count() const {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (present[i]) total += count[i];
  }
  return total;
}

namespace {

bool same_setting(double a1, double b1, double a2, double b2) {
  return std::abs(a1 - a2) <= kSettingMatchTol &&
         std::abs(b1 - b2) <= kSettingMatchTol;
}

const SettingCounts* find_setting(const std::vector<SettingCounts>& settings,
                                  double alpha, double beta) {
  for (const SettingCounts& s : settings) {
    if (same_setting(s.alpha, s.beta, alpha, beta)) return &s;
  }
  return nullptr;
}

// Distinct values in first-appearance order, matched within tolerance.
std::vector<double> distinct_values(const std::vector<AuditSetting>& tables,
                                    bool take_alpha) {
  std::vector<double> values;
  for (const AuditSetting& t : tables) {
    const double v = take_alpha ? t.table.alpha : t.table.beta;
    bool known = false;
    for (double u : values) {
      if (std::abs(u - v) <= kSettingMatchTol) {
        known = true;
        break;
      }
    }
    if (!known) values.push_back(v);
  }
  return values;
}

const AuditSetting* find_table(const std::vector<AuditSetting>& tables,
                               double alpha, double beta) {
  for (const AuditSetting& t : tables) {
    if (same_setting(t.table.alpha, t.table.beta, alpha, beta)) return &t;
  }
  return nullptr;
}

FlatnessCheck check_flatness(const std::vector<SettingCounts>& settings,
                             NormalizationScheme scheme,
                             double flatness_sigma) {
  FlatnessCheck flat;
  flat.threshold_sigma = flatness_sigma;
  flat.applicable = (scheme == NormalizationScheme::Tilde ||
                     scheme == NormalizationScheme::Q);
  if (!flat.applicable || settings.size() < 2) return flat;

  // Poisson variance per setting total, floored at one event so empty
  // settings do not produce infinite significance.
  std::vector<double> rate(settings.size());
  std::vector<double> var(settings.size());
  double weight_sum = 0.0;
  double weighted_rate = 0.0;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const SettingCounts& s = settings[i];
    rate[i] = s.total_rate();
    double v = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (s.present[k]) {
        v += std::max(s.count[k], 1.0) / (s.exposure[k] * s.exposure[k]);
      }
    }
    if (v <= 0.0) v = 1.0;
    var[i] = v;
    weight_sum += 1.0 / v;
    weighted_rate += rate[i] / v;
  }
  flat.mean_rate = weighted_rate / weight_sum;
  const double mean_var = 1.0 / weight_sum;

  for (std::size_t i = 0; i < settings.size(); ++i) {
    FlatnessCheck::Entry entry;
    entry.alpha = settings[i].alpha;
    entry.beta = settings[i].beta;
    entry.rate = rate[i];
    entry.deviation_sigma =
        std::abs(rate[i] - flat.mean_rate) / std::sqrt(var[i] + mean_var);
    flat.max_deviation_sigma =
        std::max(flat.max_deviation_sigma, entry.deviation_sigma);
    flat.entries.push_back(entry);
  }
  flat.warn = flat.max_deviation_sigma > flat.threshold_sigma;
  return flat;
}

}  // namespace

std::vector<SettingCounts> aggregate_rows(
    const std::vector<CountsFileRow>& rows) {
  std::vector<SettingCounts> settings;
  for (const CountsFileRow& row : rows) {
    SettingCounts* slot = nullptr;
    for (SettingCounts& s : settings) {
      if (same_setting(s.alpha, s.beta, row.alpha, row.beta)) {
        slot = &s;
        break;
      }
    }
    if (slot == nullptr) {
      settings.emplace_back();
      slot = &settings.back();
      slot->alpha = row.alpha;
      slot->beta = row.beta;
    }
    const int idx = pair_index(row.outcome);
    slot->count[idx] += static_cast<double>(row.count);
    slot->exposure[idx] += row.exposure;
    slot->present[idx] = true;
  }
  return settings;
}

AuditReport audit_counts(const std::vector<CountsFileRow>& rows,
                         NormalizationScheme scheme, double flatness_sigma) {
  AuditReport report;
  report.scheme = scheme;
  report.settings = aggregate_rows(rows);

  const double pi = std::acos(-1.0);

  if (scheme == NormalizationScheme::Standard) {
    for (const SettingCounts& s : report.settings) {
      const double total = s.total_rate();
      if (!(total > 0.0)) {
        ++report.degenerate_settings;
        continue;
      }
      AuditSetting entry;
      entry.table.scheme = NormalizationScheme::Standard;
      entry.table.alpha = s.alpha;
      entry.table.beta = s.beta;
      for (int i = 0; i < 4; ++i) entry.table.p[i] = s.rate(i) / total;
      entry.correlation_value = correlation(entry.table);
      report.tables.push_back(entry);
    }
  } else {
    // Base settings are those whose three pi-shifted partners are present
    // with (+,+) data.
    bool any_setting_with_pp = false;
    for (const SettingCounts& s : report.settings) {
      if (s.present[0]) any_setting_with_pp = true;
      const SettingCounts* shifted[4] = {
          &s,
          find_setting(report.settings, s.alpha, s.beta + pi),
          find_setting(report.settings, s.alpha + pi, s.beta),
          find_setting(report.settings, s.alpha + pi, s.beta + pi),
      };
      bool complete = true;
      for (const SettingCounts* part : shifted) {
        if (part == nullptr || !part->present[0]) {
          complete = false;
          break;
        }
      }
      if (!complete) continue;

      SettingQuadCounts quad;
      quad.alpha = s.alpha;
      quad.beta = s.beta;
      for (int i = 0; i < 4; ++i) quad.pp_count[i] = shifted[i]->rate(0);
      if (!(quad.total() > 0.0)) {
        ++report.degenerate_settings;
        continue;
      }
      AuditSetting entry;
      entry.table = normalize_tilde(quad, scheme);
      entry.correlation_value = correlation(entry.table);
      report.tables.push_back(entry);
    }
    if (report.tables.empty() && report.degenerate_settings == 0) {
      if (any_setting_with_pp) {
        throw missing_partner_error(
            "no setting has all three pi-shifted partners; tilde-style "
            "normalization needs the full shifted quad");
      }
      throw missing_partner_error("no (+,+) rows found in counts file");
    }
  }

  // A Bell parameter needs the settings to form a 2x2 grid of alphas and
  // betas. The minus sign goes on the first-appearing (alpha, beta).
  const std::vector<double> alphas = distinct_values(report.tables, true);
  const std::vector<double> betas = distinct_values(report.tables, false);
  if (alphas.size() == 2 && betas.size() == 2) {
    const AuditSetting* t11 = find_table(report.tables, alphas[0], betas[0]);
    const AuditSetting* t12 = find_table(report.tables, alphas[0], betas[1]);
    const AuditSetting* t21 = find_table(report.tables, alphas[1], betas[0]);
    const AuditSetting* t22 = find_table(report.tables, alphas[1], betas[1]);
    if (t11 && t12 && t21 && t22) {
      report.has_bell = true;
      report.bell_settings = {alphas[0], alphas[1], betas[0], betas[1]};
      report.correlations = {
          t11->correlation_value, t12->correlation_value,
          t21->correlation_value, t22->correlation_value};
      report.bell_value =
          bell_parameter(report.correlations[0], report.correlations[1],
                         report.correlations[2], report.correlations[3]);
    }
  }

  report.flatness = check_flatness(report.settings, scheme, flatness_sigma);
  return report;
}

}  // namespace bellsim
