#pragma once

#include <vector>

#include "dplab/mc.hpp"
#include "dplab/measure.hpp"

namespace dplab {

/// H_gamma of a truncated measure, with brackets accounting for the residual:
/// the untruncated value of the same draw lies in [lower_bracket, upper_bracket].
struct HGammaValue {
  double value = 0.0;
  double lower_bracket = 0.0;
  double upper_bracket = 0.0;
};

/// H_gamma(P) = sum over atoms of P{x}^(gamma+1), explicit atoms only.
///
/// Bracket: completing the truncation can only add mass, so the lower bracket
/// is the value itself. Adding total mass r raises H_gamma by at most
/// (gamma+1)*r on existing atoms (derivative of m^(gamma+1) is bounded by
/// gamma+1 on [0,1]) plus at most r via fresh atoms (each contributes
/// d^(gamma+1) <= d), so the upper bracket is value + (gamma+2)*r, clipped to 1.
HGammaValue h_gamma(const DiscreteMeasure& measure, double gamma);

/// H_0(P) = total explicit atomic mass; equals h_gamma(measure, 0) exactly.
HGammaValue h_zero(const DiscreteMeasure& measure);

/// E H_gamma(P) in closed form for P ~ Dirichlet with parameter k*P0:
/// the P0-integral of
///   [Gamma(k P0{x} + 1 + gamma) / Gamma(k P0{x} + 1)] * [Gamma(k+1) / Gamma(k+1+gamma)],
/// which is continuous_weight * I(0) + sum over base atoms of mass * I(k*mass),
/// all Gamma ratios taken in log space. Equals 1 identically at gamma = 0.
double closed_form_expected_h_gamma(const DirichletParams& params, double gamma);

/// Gamma(1+gamma) * Gamma(k+1) / Gamma(k+1+gamma): the value of the closed
/// form for a purely continuous base, and a lower bound for every base.
double expected_h_gamma_lower_bound(double k, double gamma);

/// One verification row: Monte Carlo E H_gamma from truncated stick-breaking
/// draws against the closed form. Passes when the gap is within 3 standard
/// errors plus the mean truncation bracket width.
struct HGammaCheck {
  double gamma = 0.0;
  double closed_form = 0.0;
  McEstimate mc;
  double bracket = 0.0;  // mean (upper - lower) bracket width per replicate
  double z_score = 0.0;
  bool pass = false;
};

HGammaCheck verify_h_gamma(const DirichletParams& params, double gamma, const McSpec& mc,
                           double trunc_eps);

/// The squeeze route to discreteness: E H_gamma matches the closed form for
/// each gamma on a decreasing grid, the closed-form sequence is nondecreasing
/// as gamma drops, and its value at the probe gamma 1e-6 is within 1e-4 of 1.
struct CertificateReport {
  std::vector<HGammaCheck> rows;
  bool monotone_nondecreasing = false;
  double limit_probe_gamma = 0.0;
  double limit_probe_value = 0.0;
  bool limit_ok = false;
  bool pass = false;
};

CertificateReport discreteness_certificate(const DirichletParams& params,
                                           const std::vector<double>& gamma_grid,
                                           const McSpec& mc, double trunc_eps);

/// Per-interval atom presence and counts across replicated stick-breaking
/// draws. Presence frequency must be 1 (enforced when presence_eps is below
/// missed_mass_delta) and mean counts must grow strictly as the truncation
/// ladder shrinks, the finite surrogate for infinitely many atoms per
/// positive-mass interval.
struct AtomDensityRow {
  Interval interval{0.0, 1.0};
  double base_mass = 0.0;
  double presence_frequency = 0.0;
  double mean_count = 0.0;                 // at presence_eps
  std::vector<double> ladder_mean_counts;  // one per ladder eps
  bool pass = false;
};

struct AtomDensityReport {
  std::vector<AtomDensityRow> rows;
  std::vector<double> count_ladder;
  double presence_eps = 0.0;
  double missed_mass_delta = 0.0;
  bool presence_enforced = false;
  bool pass = false;
};

AtomDensityReport atom_density_check(const DirichletParams& params,
                                     const std::vector<Interval>& intervals, const McSpec& mc,
                                     double presence_eps, const std::vector<double>& count_ladder,
                                     double missed_mass_delta = 1e-6);

}  // namespace dplab
