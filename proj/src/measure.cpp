#include "dplab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

namespace dplab {

namespace {

// Kahan sum; the 1e-12 mass checks should not be eaten by accumulation error.
double compensated_sum(const std::vector<double>& xs) {
  double sum = 0.0, c = 0.0;
  for (double x : xs) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double normal_cdf(double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace

void validate_interval(const Interval& iv) {
  if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.lo < iv.hi)) {
    throw std::invalid_argument("interval: need lo < hi, got [" + std::to_string(iv.lo) + ", " +
                                std::to_string(iv.hi) + ")");
  }
}

ContinuousDist::ContinuousDist(Kind kind, double a, double b, std::string name)
    : kind_(kind), a_(a), b_(b), name_(std::move(name)) {}

ContinuousDist ContinuousDist::uniform(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("uniform: need finite a < b");
  }
  return ContinuousDist(Kind::kUniform, a, b,
                        "uniform(" + std::to_string(a) + "," + std::to_string(b) + ")");
}

ContinuousDist ContinuousDist::standard_normal() {
  return ContinuousDist(Kind::kNormal, 0.0, 1.0, "normal");
}

double ContinuousDist::sample(RngStream& stream) const {
  switch (kind_) {
    case Kind::kUniform:
      return a_ + (b_ - a_) * stream.uniform01();
    case Kind::kNormal:
      return stream.normal();
  }
  throw std::logic_error("ContinuousDist: unknown kind");
}

double ContinuousDist::interval_prob(const Interval& iv) const {
  validate_interval(iv);
  switch (kind_) {
    case Kind::kUniform: {
      double overlap = std::min(iv.hi, b_) - std::max(iv.lo, a_);
      return std::max(0.0, overlap) / (b_ - a_);
    }
    case Kind::kNormal:
      return normal_cdf(iv.hi) - normal_cdf(iv.lo);
  }
  throw std::logic_error("ContinuousDist: unknown kind");
}

BaseMeasure::BaseMeasure(double continuous_weight, ContinuousDist continuous,
                         std::vector<BaseAtom> atoms)
    : continuous_weight_(continuous_weight),
      continuous_(std::move(continuous)),
      atoms_(std::move(atoms)) {
  if (!(continuous_weight_ >= 0.0) || !(continuous_weight_ <= 1.0)) {
    throw std::invalid_argument("BaseMeasure: continuous_weight must be in [0,1]");
  }
  std::unordered_set<OriginId> ids;
  std::vector<double> masses;
  masses.reserve(atoms_.size() + 1);
  masses.push_back(continuous_weight_);
  for (const BaseAtom& atom : atoms_) {
    if (!(atom.mass > 0.0) || !(atom.mass <= 1.0)) {
      throw std::invalid_argument("BaseMeasure: atom masses must be in (0,1]");
    }
    if (!std::isfinite(atom.location.value)) {
      throw std::invalid_argument("BaseMeasure: atom locations must be finite");
    }
    if (!ids.insert(atom.location.origin_id).second) {
      throw std::invalid_argument("BaseMeasure: duplicate atom origin_id " +
                                  std::to_string(atom.location.origin_id));
    }
    masses.push_back(atom.mass);
  }
  double total = compensated_sum(masses);
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("BaseMeasure: continuous weight plus atom masses is " +
                                std::to_string(total) + ", not 1");
  }
}

BaseMeasure BaseMeasure::continuous(ContinuousDist dist) {
  return BaseMeasure(1.0, std::move(dist), {});
}

BaseMeasure BaseMeasure::point_mass(Location loc) {
  return BaseMeasure(0.0, ContinuousDist::uniform(0.0, 1.0), {BaseAtom{loc, 1.0}});
}

double BaseMeasure::atom_mass(const Location& loc) const {
  for (const BaseAtom& atom : atoms_) {
    if (atom.location.origin_id == loc.origin_id) return atom.mass;
  }
  return 0.0;
}

Location BaseMeasure::sample(RngStream& values, RngStream& ids) const {
  double u = values.uniform01();
  if (u < continuous_weight_) {
    return Location{continuous_.sample(values), ids.next_origin_id()};
  }
  double cum = continuous_weight_;
  for (const BaseAtom& atom : atoms_) {
    cum += atom.mass;
    if (u < cum) return atom.location;
  }
  // u landed in the rounding sliver past the accumulated total.
  if (!atoms_.empty()) return atoms_.back().location;
  return Location{continuous_.sample(values), ids.next_origin_id()};
}

DirichletParams::DirichletParams(double k, BaseMeasure base) : k_(k), base_(std::move(base)) {
  if (!(k_ > 0.0) || !std::isfinite(k_)) {
    throw std::invalid_argument("DirichletParams: k must be strictly positive, got " +
                                std::to_string(k));
  }
}

DiscreteMeasure::DiscreteMeasure(std::vector<WeightedAtom> atoms, double residual)
    : atoms_(std::move(atoms)), residual_(residual) {
  if (!(residual_ >= 0.0) || !(residual_ < 1.0)) {
    throw std::invalid_argument("DiscreteMeasure: residual must be in [0,1)");
  }
  std::unordered_set<OriginId> ids;
  std::vector<double> weights;
  weights.reserve(atoms_.size() + 1);
  weights.push_back(residual_);
  for (const WeightedAtom& atom : atoms_) {
    if (!(atom.weight > 0.0)) {
      throw std::invalid_argument("DiscreteMeasure: weights must be strictly positive");
    }
    if (!ids.insert(atom.location.origin_id).second) {
      throw std::invalid_argument("DiscreteMeasure: duplicate origin_id " +
                                  std::to_string(atom.location.origin_id));
    }
    weights.push_back(atom.weight);
  }
  double total = compensated_sum(weights);
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("DiscreteMeasure: weights plus residual is " +
                                std::to_string(total) + ", not 1");
  }
}

DiscreteMeasure DiscreteMeasure::normalized() const {
  if (residual_ == 0.0) return *this;
  if (atoms_.empty()) {
    throw std::domain_error("DiscreteMeasure::normalized: no atoms to carry the mass");
  }
  double explicit_mass = 1.0 - residual_;
  std::vector<WeightedAtom> scaled = atoms_;
  for (WeightedAtom& atom : scaled) atom.weight /= explicit_mass;
  return DiscreteMeasure(std::move(scaled), 0.0);
}

double atom_mass(const DiscreteMeasure& measure, const Location& loc) {
  for (const WeightedAtom& atom : measure.atoms()) {
    if (atom.location.origin_id == loc.origin_id) return atom.weight;
  }
  return 0.0;
}

SetMass measure_mass_of_set(const DiscreteMeasure& measure, const Interval& iv) {
  validate_interval(iv);
  SetMass out;
  for (const WeightedAtom& atom : measure.atoms()) {
    if (iv.contains(atom.location.value)) {
      out.mass += atom.weight;
      out.count += 1;
    }
  }
  return out;
}

double base_mass_of_set(const BaseMeasure& base, const Interval& iv) {
  validate_interval(iv);
  double mass = base.continuous_weight() * base.continuous_dist().interval_prob(iv);
  for (const BaseAtom& atom : base.atoms()) {
    if (iv.contains(atom.location.value)) mass += atom.mass;
  }
  return mass;
}

}  // namespace dplab
