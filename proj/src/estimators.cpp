#include "bellsim/estimators.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace bellsim {

const char* scheme_name(NormalizationScheme scheme) {
  switch (scheme) {
    case NormalizationScheme::Standard:
      return "standard";
    case NormalizationScheme::Tilde:
      return "tilde";
    case NormalizationScheme::Q:
      return "q";
  }
  return "unknown";
}

NormalizationScheme scheme_from_name(const std::string& name) {
  for (NormalizationScheme scheme :
       {NormalizationScheme::Standard, NormalizationScheme::Tilde,
        NormalizationScheme::Q}) {
    if (name == scheme_name(scheme)) return scheme;
  }
  throw invalid_input_error("unknown normalization scheme '" + name + "'");
}

ProbabilityTable normalize_standard(const RateTable& table) {
  const double total = table.total_rate();
  if (!(total > 0.0)) {
    throw degenerate_normalization_error(
        "total rate is zero; nothing to normalize (excluded source setting)");
  }
  ProbabilityTable p;
  p.scheme = NormalizationScheme::Standard;
  p.alpha = table.alpha;
  p.beta = table.beta;
  for (int i = 0; i < 4; ++i) p.p[i] = table.rate[i] / total;
  return p;
}

ProbabilityTable normalize_tilde(const SettingQuadCounts& quad,
                                 NormalizationScheme label) {
  const double total = quad.total();
  if (!(total > 0.0)) {
    throw degenerate_normalization_error(
        "shifted-setting quad recorded no events; nothing to normalize");
  }
  ProbabilityTable p;
  p.scheme = label;
  p.alpha = quad.alpha;
  p.beta = quad.beta;
  for (int i = 0; i < 4; ++i) p.p[i] = quad.pp_count[i] / total;
  return p;
}

ProbabilityTable q_functions(double alpha_p, double beta_p) {
  if (!std::isfinite(alpha_p) || !std::isfinite(beta_p)) {
    throw invalid_input_error("angles must be finite");
  }
  const double c = std::cos(alpha_p + beta_p);
  ProbabilityTable p;
  p.scheme = NormalizationScheme::Q;
  p.alpha = alpha_p;
  p.beta = beta_p;
  p.p = {0.25 * (1.0 + c), 0.25 * (1.0 - c), 0.25 * (1.0 - c),
         0.25 * (1.0 + c)};
  return p;
}

SettingQuadCounts analytic_quad_counts(ScenarioKind kind, double alpha,
                                       double beta, const SourceModel& src) {
  SettingQuadCounts quad;
  quad.alpha = alpha;
  quad.beta = beta;
  for (const ShiftedSetting& s : shifted_setting_identities(alpha, beta)) {
    const RateTable table = analytic_rates(kind, s.alpha, s.beta, src);
    quad.pp_count[pair_index(s.pair)] = table.rate[0];
  }
  return quad;
}

double correlation(const ProbabilityTable& table) {
  // + for (+,+) and (-,-), - for the mixed outcomes.
  return table.p[0] - table.p[1] - table.p[2] + table.p[3];
}

double bell_parameter(double e11, double e12, double e21, double e22) {
  const double limit = 1.0 + tol::correlation_range;
  for (double e : {e11, e12, e21, e22}) {
    if (!(std::abs(e) <= limit)) {
      throw invalid_input_error("correlation out of range [-1, 1]");
    }
  }
  return std::abs(-e11 + e12 + e21 + e22);
}

double correlation_at(ScenarioKind kind, NormalizationScheme scheme,
                      double alpha, double beta, const SourceModel& src) {
  switch (scheme) {
    case NormalizationScheme::Standard:
      return correlation(normalize_standard(analytic_rates(kind, alpha, beta, src)));
    case NormalizationScheme::Tilde:
    case NormalizationScheme::Q:
      return correlation(
          normalize_tilde(analytic_quad_counts(kind, alpha, beta, src), scheme));
  }
  throw invalid_input_error("unknown normalization scheme");
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Golden-section maximization of f over [lo, hi]; returns the best f and
// writes the argmax. f may return -inf for excluded points.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, double& xbest) {
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  xbest = 0.5 * (a + b);
  return f(xbest);
}

}  // namespace

ChshResult chsh_optimize(ScenarioKind kind, NormalizationScheme scheme,
                         int grid_density, double refinement_tolerance,
                         double n0) {
  if (grid_density < 8) {
    throw invalid_input_error("grid density must be at least 8");
  }
  if (!std::isfinite(refinement_tolerance) || refinement_tolerance <= 0.0) {
    throw invalid_input_error("refinement tolerance must be finite and > 0");
  }
  const SourceModel src = SourceModel::for_scenario(kind, n0);
  const int d = grid_density;
  const double two_pi = 2.0 * std::acos(-1.0);
  const double step = two_pi / d;

  // Correlation on the d x d setting grid; NaN marks excluded points.
  std::vector<double> grid(static_cast<std::size_t>(d) * d, kNaN);
  std::size_t skipped = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      try {
        grid[static_cast<std::size_t>(i) * d + j] =
            correlation_at(kind, scheme, i * step, j * step, src);
      } catch (const degenerate_normalization_error&) {
        ++skipped;
      }
    }
  }

  // Exhaustive quad scan. B needs only the four grid correlations.
  double best = kNegInf;
  int bi1 = 0, bi2 = 0, bj1 = 0, bj2 = 0;
  for (int i1 = 0; i1 < d; ++i1) {
    for (int i2 = 0; i2 < d; ++i2) {
      for (int j1 = 0; j1 < d; ++j1) {
        const double e11 = grid[static_cast<std::size_t>(i1) * d + j1];
        const double e21 = grid[static_cast<std::size_t>(i2) * d + j1];
        if (std::isnan(e11) || std::isnan(e21)) continue;
        for (int j2 = 0; j2 < d; ++j2) {
          const double e12 = grid[static_cast<std::size_t>(i1) * d + j2];
          const double e22 = grid[static_cast<std::size_t>(i2) * d + j2];
          if (std::isnan(e12) || std::isnan(e22)) continue;
          const double b = std::abs(-e11 + e12 + e21 + e22);
          if (b > best) {
            best = b;
            bi1 = i1;
            bi2 = i2;
            bj1 = j1;
            bj2 = j2;
          }
        }
      }
    }
  }
  if (!(best > kNegInf)) {
    throw degenerate_normalization_error(
        "every grid setting is degenerate for this scenario/scheme");
  }

  // Coordinate-wise golden-section refinement, never accepting a value
  // below the grid optimum.
  std::array<double, 4> x = {bi1 * step, bi2 * step, bj1 * step, bj2 * step};
  const auto eval = [&](const std::array<double, 4>& v) -> double {
    try {
      const double e11 = correlation_at(kind, scheme, v[0], v[2], src);
      const double e12 = correlation_at(kind, scheme, v[0], v[3], src);
      const double e21 = correlation_at(kind, scheme, v[1], v[2], src);
      const double e22 = correlation_at(kind, scheme, v[1], v[3], src);
      return std::abs(-e11 + e12 + e21 + e22);
    } catch (const degenerate_normalization_error&) {
      return kNegInf;
    }
  };

  double current = eval(x);
  if (current < best) current = best;  // grid value is authoritative
  const double xtol =
      std::max(1e-12, 0.01 * std::sqrt(refinement_tolerance));
  constexpr int kMaxPasses = 64;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    const double before = current;
    for (int coord = 0; coord < 4; ++coord) {
      const auto line = [&](double t) {
        std::array<double, 4> probe = x;
        probe[coord] = t;
        return eval(probe);
      };
      double xc = x[coord];
      const double fc = golden_max(line, x[coord] - step, x[coord] + step,
                                   xtol, xc);
      if (fc > current) {
        current = fc;
        x[coord] = xc;
      }
    }
    if (current - before <= refinement_tolerance) break;
  }

  ChshResult result;
  result.settings = {x[0], x[1], x[2], x[3]};
  result.bell_value = current;
  result.grid_points_skipped = skipped;
  try {
    result.correlations = {correlation_at(kind, scheme, x[0], x[2], src),
                           correlation_at(kind, scheme, x[0], x[3], src),
                           correlation_at(kind, scheme, x[1], x[2], src),
                           correlation_at(kind, scheme, x[1], x[3], src)};
  } catch (const degenerate_normalization_error&) {
    result.correlations = {kNaN, kNaN, kNaN, kNaN};
  }
  return result;
}

}  // namespace bellsim
