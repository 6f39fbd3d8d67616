#include <doctest.h>

#include <cmath>
#include <vector>

#include "dplab/discreteness.hpp"
#include "dplab/equivalence.hpp"
#include "dplab/samplers.hpp"
#include "test_util.hpp"

using namespace dplab;
using namespace dplab::test;

namespace {

DirichletParams uniform_params(double k) {
  return DirichletParams(k, BaseMeasure::continuous(ContinuousDist::uniform(0.0, 1.0)));
}

std::vector<DirichletParams> base_grid(double k) {
  return {uniform_params(k),
          DirichletParams(k, BaseMeasure(0.5, ContinuousDist::uniform(0.0, 1.0),
                                         {BaseAtom{Location{0.2, 0}, 0.5}})),
          DirichletParams(k, BaseMeasure::point_mass(Location{0.2, 0}))};
}

std::vector<FunctionSpec> all_kinds() {
  return {FunctionSpec::constant(1.0), FunctionSpec::atom_mass_power(1.0),
          FunctionSpec::set_mass({0.0, 0.5}),
          FunctionSpec::set_mass_indicator({0.0, 0.5}, {0.25, 0.75})};
}

}  // namespace

TEST_SUITE_BEGIN("verify-harness");

TEST_CASE("constant integrands are exact on both sides") {
  auto params = uniform_params(1.0);
  auto f = FunctionSpec::constant(2.5);
  auto lhs = expect_f_measure_first(f, params, McSpec{61, 100, 0}, 1e-10);
  auto rhs = expect_f_point_first(f, params, McSpec{61, 100, 100}, 1e-10);
  CHECK(lhs.mean == 2.5);
  CHECK(lhs.se == 0.0);
  CHECK(rhs.mean == 2.5);
  auto attempt = equivalence_test(f, params, McSpec{61, 100, 0}, 1e-10);
  CHECK(attempt.z == 0.0);
  CHECK(attempt.pass);
}

TEST_CASE("measure-first expectation of P{X} matches the closed form") {
  auto params = uniform_params(1.0);
  auto f = FunctionSpec::atom_mass_power(1.0);
  auto est = expect_f_measure_first(f, params, McSpec{62, 10000, 0}, 1e-10);
  double truth = closed_form_expected_h_gamma(params, 1.0);
  CHECK(truth == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(within_3se(est, truth));
}

TEST_CASE("point-first expectation of P{X} matches the closed form") {
  auto params = uniform_params(1.0);
  auto f = FunctionSpec::atom_mass_power(1.0);
  auto est = expect_f_point_first(f, params, McSpec{63, 10000, 0}, 1e-10);
  CHECK(within_3se(est, 0.5));
}

TEST_CASE("set-mass expectations sit at the base probability on both sides") {
  auto params = uniform_params(2.0);
  auto f = FunctionSpec::set_mass({0.0, 0.5});
  auto lhs = expect_f_measure_first(f, params, McSpec{64, 10000, 0}, 1e-10);
  auto rhs = expect_f_point_first(f, params, McSpec{64, 10000, 10000}, 1e-10);
  CHECK(within_3se(lhs, 0.5));  // E P(A) = P0(A)
  CHECK(within_3se(rhs, 0.5));  // (k P0(A) + P0(A)) / (k+1) = P0(A)
}

TEST_CASE("set-mass-indicator point-first estimate matches the hand oracle") {
  // For x ~ P0 then P ~ posterior: E P(A) 1[x in B]
  //   = integral_B (k P0(A) + 1[x in A]) / (k+1) P0(dx)
  //   = (k P0(A) P0(B) + P0(A intersect B)) / (k+1).
  auto params = uniform_params(1.0);
  auto f = FunctionSpec::set_mass_indicator({0.0, 0.5}, {0.25, 0.75});
  double expected = (1.0 * 0.5 * 0.5 + 0.25) / 2.0;
  CHECK(expected == doctest::Approx(0.25).epsilon(1e-12));
  auto rhs = expect_f_point_first(f, params, McSpec{65, 10000, 0}, 1e-10);
  CHECK(within_3se(rhs, expected));
  auto lhs = expect_f_measure_first(f, params, McSpec{65, 10000, 10000}, 1e-10);
  CHECK(within_3se(lhs, expected));
}

TEST_CASE("equivalence holds for every kind on the k and base grid") {
  std::uint64_t seed = 66;
  for (double k : {0.5, 1.0, 5.0}) {
    for (const auto& params : base_grid(k)) {
      for (const auto& f : all_kinds()) {
        auto verdict = equivalence_test_with_retry(f, params, McSpec{seed++, 2000, 0}, 1e-10);
        INFO("k=", k, " f=", f.describe());
        CHECK(verdict.pass);
      }
    }
  }
}

TEST_CASE("estimates never leave the integrand's analytic bound") {
  std::uint64_t seed = 90;
  for (double k : {0.5, 5.0}) {
    for (const auto& params : base_grid(k)) {
      for (const auto& f : all_kinds()) {
        auto lhs = expect_f_measure_first(f, params, McSpec{seed, 500, 0}, 1e-8);
        auto rhs = expect_f_point_first(f, params, McSpec{seed, 500, 500}, 1e-8);
        CHECK(std::abs(lhs.mean) <= f.bound());
        CHECK(std::abs(rhs.mean) <= f.bound());
        ++seed;
      }
    }
  }
}

TEST_CASE("doubling the replicates shrinks the standard error like one over root two") {
  auto params = uniform_params(1.0);
  auto f = FunctionSpec::atom_mass_power(1.0);
  auto narrow = expect_f_measure_first(f, params, McSpec{70, 4000, 0}, 1e-10);
  auto wide = expect_f_measure_first(f, params, McSpec{70, 8000, 0}, 1e-10);
  double ratio = wide.se / narrow.se;
  CHECK(ratio >= 0.6);
  CHECK(ratio <= 0.85);
}

TEST_CASE("failed first attempts retry once with a derived seed and report both") {
  auto params = uniform_params(1.0);
  auto f = FunctionSpec::atom_mass_power(1.0);
  auto verdict = equivalence_test_with_retry(f, params, McSpec{71, 2000, 0}, 1e-10);
  CHECK(verdict.pass);
  if (verdict.first.pass) {
    CHECK(!verdict.retry.has_value());
  } else {
    CHECK(verdict.retry.has_value());
  }
  CHECK(verdict.function == "atom_mass_power(1.000000)");
}

TEST_SUITE_END();
