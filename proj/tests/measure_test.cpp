#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "dplab/io.hpp"
#include "dplab/measure.hpp"
#include "dplab/rng.hpp"

using namespace dplab;

namespace {

DiscreteMeasure make_measure(std::vector<std::pair<double, double>> loc_weight, double residual) {
  std::vector<WeightedAtom> atoms;
  OriginId id = 0;
  for (auto [value, weight] : loc_weight) {
    atoms.push_back(WeightedAtom{Location{value, id++}, weight});
  }
  return DiscreteMeasure(std::move(atoms), residual);
}

}  // namespace

TEST_SUITE_BEGIN("measure-core");

TEST_CASE("atom_mass looks up by origin id only") {
  auto m = make_measure({{0.1, 0.7}, {0.9, 0.3}}, 0.0);
  CHECK(atom_mass(m, Location{0.1, 0}) == 0.7);
  CHECK(atom_mass(m, Location{0.1, 99}) == 0.0);  // unused id has zero mass

  auto with_residual = make_measure({{0.5, 0.9}}, 0.1);
  CHECK(atom_mass(with_residual, Location{0.5, 0}) == 0.9);  // residual excluded

  // Identity is the id: perturbing the value does not change the lookup.
  CHECK(atom_mass(m, Location{123.456, 0}) == 0.7);
}

TEST_CASE("measure_mass_of_set filters atoms by half-open interval") {
  auto m = make_measure({{0.2, 0.5}, {0.8, 0.5}}, 0.0);
  auto [mass, count] = measure_mass_of_set(m, {0.0, 0.5});
  CHECK(mass == 0.5);
  CHECK(count == 1);

  auto empty = measure_mass_of_set(m, {0.3, 0.4});
  CHECK(empty.mass == 0.0);
  CHECK(empty.count == 0);

  auto with_residual = make_measure({{0.2, 0.4}, {0.8, 0.5}}, 0.1);
  auto full = measure_mass_of_set(with_residual, {-1e9, 1e9});
  CHECK(full.mass == doctest::Approx(1.0 - 0.1).epsilon(1e-12));
  CHECK(full.count == 2);

  CHECK_THROWS_AS(measure_mass_of_set(m, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(measure_mass_of_set(m, {0.7, 0.2}), std::invalid_argument);
}

TEST_CASE("measure_mass_of_set is exactly additive over a split") {
  // Dyadic weights make the sums exact in any association order.
  auto m = make_measure({{0.1, 0.5}, {0.4, 0.25}, {0.6, 0.125}, {0.9, 0.125}}, 0.0);
  for (double split : {0.05, 0.3, 0.5, 0.75, 0.95}) {
    auto left = measure_mass_of_set(m, {0.0, split});
    auto right = measure_mass_of_set(m, {split, 1.0});
    auto whole = measure_mass_of_set(m, {0.0, 1.0});
    CHECK(left.mass + right.mass == whole.mass);
    CHECK(left.count + right.count == whole.count);
  }
}

TEST_CASE("base_mass_of_set combines the continuous part and atoms") {
  auto uniform = BaseMeasure::continuous(ContinuousDist::uniform(0.0, 1.0));
  CHECK(base_mass_of_set(uniform, {0.25, 0.75}) == doctest::Approx(0.5).epsilon(1e-12));

  auto atomic = BaseMeasure::point_mass(Location{0.3, 0});
  CHECK(base_mass_of_set(atomic, {0.0, 0.5}) == 1.0);

  BaseMeasure mixed(0.5, ContinuousDist::uniform(0.0, 1.0), {BaseAtom{Location{0.2, 0}, 0.5}});
  CHECK(base_mass_of_set(mixed, {0.0, 0.5}) == doctest::Approx(0.75).epsilon(1e-12));

  auto normal = BaseMeasure::continuous(ContinuousDist::standard_normal());
  double inf = std::numeric_limits<double>::infinity();
  CHECK(base_mass_of_set(normal, {0.0, inf}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(base_mass_of_set(normal, {-inf, inf}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("BaseMeasure validates its construction") {
  CHECK_THROWS_AS(BaseMeasure(0.8, ContinuousDist::uniform(0.0, 1.0),
                              {BaseAtom{Location{0.2, 0}, 0.5}}),
                  std::invalid_argument);  // masses sum to 1.3
  CHECK_THROWS_AS(BaseMeasure(0.5, ContinuousDist::uniform(0.0, 1.0),
                              {BaseAtom{Location{0.2, 0}, 0.25}, BaseAtom{Location{0.4, 0}, 0.25}}),
                  std::invalid_argument);  // duplicate ids
  CHECK_THROWS_AS(BaseMeasure(1.0, ContinuousDist::uniform(0.0, 1.0),
                              {BaseAtom{Location{0.2, 0}, -0.1}}),
                  std::invalid_argument);

  BaseMeasure mixed(0.5, ContinuousDist::uniform(0.0, 1.0), {BaseAtom{Location{0.2, 7}, 0.5}});
  CHECK(mixed.atom_mass(Location{0.2, 7}) == 0.5);
  CHECK(mixed.atom_mass(Location{0.2, 8}) == 0.0);
}

TEST_CASE("BaseMeasure sampling returns stable ids for atoms and fresh ids otherwise") {
  BaseMeasure mixed(0.5, ContinuousDist::uniform(0.0, 1.0), {BaseAtom{Location{0.2, 7}, 0.5}});
  RngStream s(5, 3);
  int atom_hits = 0, fresh = 0;
  OriginId last_fresh = 0;
  for (int i = 0; i < 2000; ++i) {
    Location loc = mixed.sample(s);
    if (loc.origin_id == 7) {
      ++atom_hits;
      CHECK(loc.value == 0.2);
    } else {
      ++fresh;
      CHECK(loc.origin_id < 0);
      CHECK(loc.origin_id != last_fresh);
      last_fresh = loc.origin_id;
    }
  }
  CHECK(atom_hits + fresh == 2000);
  CHECK(atom_hits > 800);
  CHECK(fresh > 800);
}

TEST_CASE("DirichletParams requires strictly positive k") {
  auto base = BaseMeasure::continuous(ContinuousDist::uniform(0.0, 1.0));
  CHECK_THROWS_AS(DirichletParams(0.0, base), std::invalid_argument);
  CHECK_THROWS_AS(DirichletParams(-1.0, base), std::invalid_argument);
  CHECK(DirichletParams(2.5, base).k() == 2.5);
}

TEST_CASE("DiscreteMeasure validates mass accounting") {
  CHECK_THROWS_AS(make_measure({{0.1, 0.5}, {0.2, 0.4}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_measure({{0.1, 0.5}}, 0.5 + 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({WeightedAtom{Location{0.1, 0}, 0.5},
                                   WeightedAtom{Location{0.2, 0}, 0.5}},
                                  0.0),
                  std::invalid_argument);  // duplicate ids
  CHECK_THROWS_AS(DiscreteMeasure({WeightedAtom{Location{0.1, 0}, 0.0},
                                   WeightedAtom{Location{0.2, 1}, 1.0}},
                                  0.0),
                  std::invalid_argument);  // nonpositive weight

  auto ok = make_measure({{0.1, 0.6}, {0.2, 0.4 - 1e-13}}, 0.0);
  CHECK(ok.atoms().size() == 2);
}

TEST_CASE("normalized folds the residual proportionally") {
  auto m = make_measure({{0.1, 0.6}, {0.2, 0.2}}, 0.2);
  auto n = m.normalized();
  CHECK(n.residual() == 0.0);
  CHECK(n.atoms()[0].weight == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(n.atoms()[1].weight == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(n.atoms()[0].location.origin_id == m.atoms()[0].location.origin_id);
}

TEST_CASE("discrete measure csv and json serialization round-trips") {
  auto m = make_measure({{0.123456789, 0.5}, {-1.25, 0.25}, {17.0, 0.25 - 3e-13}}, 3e-13);

  std::ostringstream csv;
  write_discrete_measure_csv(csv, m);
  std::istringstream csv_in(csv.str());
  auto from_csv = read_discrete_measure_csv(csv_in);
  std::ostringstream csv2;
  write_discrete_measure_csv(csv2, from_csv);
  CHECK(csv.str() == csv2.str());
  CHECK(from_csv.residual() == m.residual());
  CHECK(from_csv.atoms()[1].weight == m.atoms()[1].weight);

  auto j = discrete_measure_json(m);
  auto from_json = discrete_measure_from_json(j);
  CHECK(discrete_measure_json(from_json) == j);
}

TEST_CASE("format_number rejects non-finite cells") {
  CHECK(format_number(0.5) == "0.5");
  CHECK_THROWS_AS(format_number(std::nan("")), std::runtime_error);
  CHECK_THROWS_AS(format_number(std::numeric_limits<double>::infinity()), std::runtime_error);
}

TEST_SUITE_END();
