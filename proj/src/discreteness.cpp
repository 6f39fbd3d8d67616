#include "dplab/discreteness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "dplab/samplers.hpp"
#include "dplab/special.hpp"

namespace dplab {

namespace {

// Integrand of the closed form at a point with base atom mass a0/k:
// [Gamma(a0+1+gamma)/Gamma(a0+1)] * [Gamma(k+1)/Gamma(k+1+gamma)].
double moment_integrand(double a0, double k, double gamma) {
  return std::exp(log_gamma(a0 + 1.0 + gamma) - log_gamma(a0 + 1.0) + log_gamma(k + 1.0) -
                  log_gamma(k + 1.0 + gamma));
}

void validate_decreasing_grid(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) {
    throw std::invalid_argument(std::string(what) + ": grid must be nonempty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) {
      throw std::invalid_argument(std::string(what) + ": grid values must be strictly positive");
    }
    if (i > 0 && !(grid[i] < grid[i - 1])) {
      throw std::invalid_argument(std::string(what) + ": grid must be strictly decreasing");
    }
  }
}

double finite_z(double diff, double se, double bracket) {
  if (se > 0.0) return diff / se;
  return diff <= bracket ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

HGammaValue h_gamma(const DiscreteMeasure& measure, double gamma) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("h_gamma: gamma must be >= 0");
  }
  double value = 0.0;
  for (const WeightedAtom& atom : measure.atoms()) {
    value += gamma == 0.0 ? atom.weight : std::pow(atom.weight, gamma + 1.0);
  }
  double upper = std::min(value + (gamma + 2.0) * measure.residual(), 1.0);
  return HGammaValue{value, value, std::max(upper, value)};
}

HGammaValue h_zero(const DiscreteMeasure& measure) { return h_gamma(measure, 0.0); }

double closed_form_expected_h_gamma(const DirichletParams& params, double gamma) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("closed_form_expected_h_gamma: gamma must be >= 0");
  }
  // Both Gamma ratios are identically 1 at gamma = 0 and P0 has total mass 1.
  if (gamma == 0.0) return 1.0;
  const double k = params.k();
  const BaseMeasure& base = params.base();
  double value = 0.0;
  if (base.continuous_weight() > 0.0) {
    value += base.continuous_weight() * moment_integrand(0.0, k, gamma);
  }
  for (const BaseAtom& atom : base.atoms()) {
    value += atom.mass * moment_integrand(k * atom.mass, k, gamma);
  }
  return value;
}

double expected_h_gamma_lower_bound(double k, double gamma) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("expected_h_gamma_lower_bound: k must be > 0");
  }
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("expected_h_gamma_lower_bound: gamma must be >= 0");
  }
  return moment_integrand(0.0, k, gamma);
}

HGammaCheck verify_h_gamma(const DirichletParams& params, double gamma, const McSpec& mc,
                           double trunc_eps) {
  struct Draw {
    double value;
    double width;
  };
  std::vector<Draw> draws = replicate_map_t<Draw>(mc, [&](RngStream& stream) {
    HGammaValue h = h_gamma(stick_breaking(params, stream, trunc_eps), gamma);
    return Draw{h.value, h.upper_bracket - h.lower_bracket};
  });
  std::vector<double> values;
  values.reserve(draws.size());
  double width_sum = 0.0;
  for (const Draw& d : draws) {
    values.push_back(d.value);
    width_sum += d.width;
  }
  HGammaCheck check;
  check.gamma = gamma;
  check.closed_form = closed_form_expected_h_gamma(params, gamma);
  check.mc = summarize(values, mc.seed);
  check.bracket = width_sum / static_cast<double>(draws.size());
  double diff = std::abs(check.mc.mean - check.closed_form);
  check.z_score = finite_z(diff, check.mc.se, check.bracket);
  check.pass = diff <= 3.0 * check.mc.se + check.bracket;
  return check;
}

CertificateReport discreteness_certificate(const DirichletParams& params,
                                           const std::vector<double>& gamma_grid,
                                           const McSpec& mc, double trunc_eps) {
  validate_decreasing_grid(gamma_grid, "discreteness_certificate");
  CertificateReport report;
  report.rows.reserve(gamma_grid.size());
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    McSpec cell = mc;
    cell.stream_offset = mc.stream_offset + i * static_cast<std::uint64_t>(mc.reps);
    report.rows.push_back(verify_h_gamma(params, gamma_grid[i], cell, trunc_eps));
  }
  report.monotone_nondecreasing = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].closed_form < report.rows[i - 1].closed_form) {
      report.monotone_nondecreasing = false;
    }
  }
  report.limit_probe_gamma = 1e-6;
  report.limit_probe_value = closed_form_expected_h_gamma(params, report.limit_probe_gamma);
  report.limit_ok = std::abs(report.limit_probe_value - 1.0) <= 1e-4;
  report.pass = report.monotone_nondecreasing && report.limit_ok &&
                std::all_of(report.rows.begin(), report.rows.end(),
                            [](const HGammaCheck& row) { return row.pass; });
  return report;
}

AtomDensityReport atom_density_check(const DirichletParams& params,
                                     const std::vector<Interval>& intervals, const McSpec& mc,
                                     double presence_eps, const std::vector<double>& count_ladder,
                                     double missed_mass_delta) {
  if (intervals.empty()) {
    throw std::invalid_argument("atom_density_check: need at least one interval");
  }
  std::vector<double> base_masses;
  base_masses.reserve(intervals.size());
  for (const Interval& iv : intervals) {
    double mass = base_mass_of_set(params.base(), iv);
    if (!(mass > 0.0)) {
      throw std::invalid_argument("atom_density_check: interval [" + std::to_string(iv.lo) + ", " +
                                  std::to_string(iv.hi) +
                                  ") has zero P0 mass; the corollary does not apply");
    }
    base_masses.push_back(mass);
  }
  validate_decreasing_grid(count_ladder, "atom_density_check ladder");
  if (!(presence_eps > 0.0) || !(presence_eps < 1.0)) {
    throw std::invalid_argument("atom_density_check: presence_eps must be in (0,1)");
  }

  auto counts_at = [&](double eps, std::uint64_t offset) {
    McSpec run = mc;
    run.stream_offset = mc.stream_offset + offset;
    return replicate_map_t<std::vector<std::int64_t>>(run, [&](RngStream& stream) {
      DiscreteMeasure draw = stick_breaking(params, stream, eps);
      std::vector<std::int64_t> counts(intervals.size(), 0);
      for (std::size_t i = 0; i < intervals.size(); ++i) {
        counts[i] = measure_mass_of_set(draw, intervals[i]).count;
      }
      return counts;
    });
  };

  const auto reps = static_cast<double>(mc.reps);
  AtomDensityReport report;
  report.count_ladder = count_ladder;
  report.presence_eps = presence_eps;
  report.missed_mass_delta = missed_mass_delta;
  report.presence_enforced = presence_eps < missed_mass_delta;

  auto presence_counts = counts_at(presence_eps, 0);
  std::vector<std::vector<double>> ladder_means(intervals.size(),
                                                std::vector<double>(count_ladder.size(), 0.0));
  for (std::size_t j = 0; j < count_ladder.size(); ++j) {
    auto counts = counts_at(count_ladder[j], (j + 1) * static_cast<std::uint64_t>(mc.reps));
    for (const auto& row : counts) {
      for (std::size_t i = 0; i < intervals.size(); ++i) {
        ladder_means[i][j] += static_cast<double>(row[i]) / reps;
      }
    }
  }

  report.pass = true;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    AtomDensityRow row;
    row.interval = intervals[i];
    row.base_mass = base_masses[i];
    std::int64_t present = 0;
    double count_sum = 0.0;
    for (const auto& counts : presence_counts) {
      present += counts[i] >= 1 ? 1 : 0;
      count_sum += static_cast<double>(counts[i]);
    }
    row.presence_frequency = static_cast<double>(present) / reps;
    row.mean_count = count_sum / reps;
    row.ladder_mean_counts = ladder_means[i];
    bool presence_ok = !report.presence_enforced || row.presence_frequency == 1.0;
    bool ladder_ok = true;
    for (std::size_t j = 1; j < row.ladder_mean_counts.size(); ++j) {
      if (!(row.ladder_mean_counts[j] > row.ladder_mean_counts[j - 1])) ladder_ok = false;
    }
    row.pass = presence_ok && ladder_ok;
    report.pass = report.pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace dplab
