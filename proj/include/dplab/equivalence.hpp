#pragma once

#include <optional>
#include <string>

#include "dplab/mc.hpp"
#include "dplab/measure.hpp"

namespace dplab {

/// Closed enumeration of test integrands f(P, x). Every kind is bounded by a
/// computable constant, which keeps the estimates' standard errors honest and
/// the functions measurable by construction.
class FunctionSpec {
 public:
  enum class Kind { kConstant, kAtomMassPower, kSetMass, kSetMassIndicator };

  static FunctionSpec constant(double c);
  /// f(P, x) = P{x}^gamma (0^0 taken as 1).
  static FunctionSpec atom_mass_power(double gamma);
  /// f(P, x) = P(A).
  static FunctionSpec set_mass(Interval a);
  /// f(P, x) = P(A) * 1[x in B].
  static FunctionSpec set_mass_indicator(Interval a, Interval b);

  Kind kind() const { return kind_; }
  double evaluate(const DiscreteMeasure& measure, const Location& x) const;

  /// |f| <= bound(), exactly.
  double bound() const;

  /// Bias bound per estimate from truncating at trunc_eps, used as the
  /// equivalence test's allowance: constants are exact; P{x}^gamma moves by
  /// at most the (gamma+2)*eps functional bracket plus eps for the residual
  /// completion draw; set masses move by at most the eps residual plus eps
  /// for the completion draw.
  double truncation_bias_bound(double trunc_eps) const;

  std::string describe() const;

 private:
  FunctionSpec(Kind kind, double c, double gamma, Interval a, Interval b);

  Kind kind_;
  double c_ = 0.0;
  double gamma_ = 0.0;
  Interval a_{0.0, 1.0};
  Interval b_{0.0, 1.0};
};

/// E f(P, X) with the measure drawn first: P from truncated stick-breaking,
/// then X from P's atoms proportional to weight, the residual slice realized
/// as one extra fresh base draw carrying the residual weight.
McEstimate expect_f_measure_first(const FunctionSpec& f, const DirichletParams& params,
                                  const McSpec& mc, double trunc_eps);

/// E f(P, X) with the point drawn first: x from P0, then P from the
/// posterior-updated parameters (k+1, (k P0 + delta_x)/(k+1)).
McEstimate expect_f_point_first(const FunctionSpec& f, const DirichletParams& params,
                                const McSpec& mc, double trunc_eps);

/// Two-sided equivalence check: z = |lhs - rhs| / sqrt(lhs.se^2 + rhs.se^2),
/// pass when |lhs - rhs| <= 3 * combined se + both sides' truncation allowance.
struct EquivalenceAttempt {
  McEstimate lhs;
  McEstimate rhs;
  double z = 0.0;
  double allowance = 0.0;
  bool pass = false;
};

EquivalenceAttempt equivalence_test(const FunctionSpec& f, const DirichletParams& params,
                                    const McSpec& mc, double trunc_eps);

/// Suite policy: one retry with a derived fresh seed when the first attempt
/// fails; both attempts are reported and the retry decides.
struct EquivalenceVerdict {
  std::string function;
  EquivalenceAttempt first;
  std::optional<EquivalenceAttempt> retry;
  bool pass = false;
};

EquivalenceVerdict equivalence_test_with_retry(const FunctionSpec& f,
                                               const DirichletParams& params, const McSpec& mc,
                                               double trunc_eps);

}  // namespace dplab
