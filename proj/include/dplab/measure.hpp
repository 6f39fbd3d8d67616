#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dplab/rng.hpp"

namespace dplab {

/// Mass-accounting tolerance for constructed measures.
inline constexpr double kMassTolerance = 1e-12;

/// A point of the real-line sample space. Atom identity is the origin_id,
/// never floating-point equality of value.
struct Location {
  double value = 0.0;
  OriginId origin_id = 0;
};

inline bool same_atom(const Location& a, const Location& b) {
  return a.origin_id == b.origin_id;
}

/// Half-open interval [lo, hi). Endpoints may be infinite.
struct Interval {
  double lo;
  double hi;

  bool contains(double x) const { return lo <= x && x < hi; }
};

/// Throws unless lo < hi and neither endpoint is NaN.
void validate_interval(const Interval& iv);

/// Continuous component of a base measure: a named distribution with an
/// analytically known interval probability.
class ContinuousDist {
 public:
  static ContinuousDist uniform(double a, double b);
  static ContinuousDist standard_normal();

  double sample(RngStream& stream) const;
  double interval_prob(const Interval& iv) const;
  const std::string& name() const { return name_; }

 private:
  enum class Kind { kUniform, kNormal };
  ContinuousDist(Kind kind, double a, double b, std::string name);

  Kind kind_;
  double a_ = 0.0;
  double b_ = 1.0;
  std::string name_;
};

struct BaseAtom {
  Location location;
  double mass = 0.0;
};

/// A probability measure P0 = continuous_weight * continuous + finite atoms.
/// Weights and atom masses must sum to 1 within kMassTolerance; atom ids are
/// pairwise distinct and masses strictly positive.
class BaseMeasure {
 public:
  BaseMeasure(double continuous_weight, ContinuousDist continuous,
              std::vector<BaseAtom> atoms);

  static BaseMeasure continuous(ContinuousDist dist);
  static BaseMeasure point_mass(Location loc);

  double continuous_weight() const { return continuous_weight_; }
  const ContinuousDist& continuous_dist() const { return continuous_; }
  const std::vector<BaseAtom>& atoms() const { return atoms_; }

  /// P0{x}: the listed mass for a matching origin_id, exactly 0 otherwise.
  double atom_mass(const Location& loc) const;

  /// One draw. Values come from `values`; fresh continuous draws take their
  /// origin id from `ids` (base-atom draws keep the atom's stable id).
  Location sample(RngStream& values, RngStream& ids) const;
  Location sample(RngStream& stream) const { return sample(stream, stream); }

 private:
  double continuous_weight_;
  ContinuousDist continuous_;
  std::vector<BaseAtom> atoms_;
};

/// The pair (k, P0) parameterizing the Dirichlet measure with total mass k.
class DirichletParams {
 public:
  DirichletParams(double k, BaseMeasure base);

  double k() const { return k_; }
  const BaseMeasure& base() const { return base_; }

 private:
  double k_;
  BaseMeasure base_;
};

struct WeightedAtom {
  Location location;
  double weight = 0.0;
};

/// A realized random measure: explicit atoms plus the un-broken residual
/// stick mass under truncation. Residual is carried, never renormalized.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<WeightedAtom> atoms, double residual);

  const std::vector<WeightedAtom>& atoms() const { return atoms_; }
  double residual() const { return residual_; }

  /// Probability measure with the residual folded proportionally into atoms.
  DiscreteMeasure normalized() const;

 private:
  std::vector<WeightedAtom> atoms_;
  double residual_;
};

/// P{x} by origin_id; never includes residual mass.
double atom_mass(const DiscreteMeasure& measure, const Location& loc);

struct SetMass {
  double mass = 0.0;
  std::int64_t count = 0;
};

/// Total explicit-atom weight and atom count inside [lo, hi).
SetMass measure_mass_of_set(const DiscreteMeasure& measure, const Interval& iv);

/// P0 probability of [lo, hi): continuous part (analytic) plus atoms inside.
double base_mass_of_set(const BaseMeasure& base, const Interval& iv);

}  // namespace dplab
