#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "esdual/duality.hpp"
#include "esdual/risk_measures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace esdual;
using esdual::testing::TestRng;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

DiscreteDistribution reference_law() {
  return from_scenarios(std::vector<double>{-3.0, -1.0, 2.0, 5.0},
                        std::vector<double>{0.1, 0.2, 0.3, 0.4});
}

// Dyadic variant: every shortfall and dual computation is exact in doubles.
DiscreteDistribution dyadic_law() {
  return from_scenarios(std::vector<double>{-3.0, -1.0, 2.0, 5.0},
                        std::vector<double>{0.125, 0.125, 0.25, 0.5});
}

}  // namespace

TEST_CASE("is_feasible membership tests") {
  const auto d = reference_law();
  CHECK(is_feasible(DensityMeasure(d, {1.0, 1.0, 1.0, 1.0}), Level(0.37)));

  const auto coin = from_scenarios(std::vector<double>{-1.0, 1.0}, std::vector<double>{0.5, 0.5});
  CHECK(is_feasible(DensityMeasure(coin, {2.0, 0.0}), Level(0.5)));    // boundary density
  CHECK(!is_feasible(DensityMeasure(coin, {2.5, -0.5}), Level(0.5)));  // negative density
  CHECK(!is_feasible(DensityMeasure(coin, {2.0, 0.5}), Level(0.5)));   // mass 1.25
  CHECK(is_feasible(DensityMeasure(coin, {1.5, 0.5}), Level(0.5)));
  CHECK(!is_feasible(DensityMeasure(coin, {1.5, 0.5}), Level(0.8)));   // density above 1/alpha
  CHECK(!is_feasible(DensityMeasure(coin, {3.0, 0.0}), Level(0.5)));   // density above 1/alpha
}

TEST_CASE("DensityMeasure requires one density per atom") {
  CHECK_THROWS_AS(DensityMeasure(reference_law(), {1.0, 1.0}), LengthMismatch);
}

TEST_CASE("expectation_under worked values") {
  const auto d = reference_law();
  const DensityMeasure base_itself(d, {1.0, 1.0, 1.0, 1.0});
  CHECK(close(expectation_under(d, base_itself, Sign::plus_x), mean(d), 1e-12));

  const DensityMeasure tail(d, {4.0, 3.0, 0.0, 0.0});
  CHECK(close(expectation_under(d, tail, Sign::minus_x), 1.8, 1e-12));

  const auto other = from_scenarios(std::vector<double>{0.0, 1.0}, std::vector<double>{0.5, 0.5});
  CHECK_THROWS_AS(expectation_under(other, tail, Sign::plus_x), BaseMismatch);
}

TEST_CASE("expectation_under on a finite space") {
  const FiniteSpace space({0.25, 0.75}, {{"X", {-2.0, 4.0}}});
  const DensityMeasure q(space, {4.0, 0.0});
  CHECK(is_feasible(q, Level(0.25)));
  CHECK(expectation_under(space, "X", q, Sign::minus_x) == 2.0);
  CHECK_THROWS_AS(expectation_under(space, "missing", q, Sign::plus_x), MissingVariable);
}

TEST_CASE("worst_case_measure worked values") {
  const auto d = reference_law();
  const auto worst = worst_case_measure(d, Level(0.25));
  REQUIRE(worst.size() == 4);
  CHECK(worst.density(0) == 4.0);
  CHECK(close(worst.density(1), 3.0, 1e-12));
  CHECK(worst.density(2) == 0.0);
  CHECK(worst.density(3) == 0.0);
  CHECK(is_feasible(worst, Level(0.25)));
  CHECK(close(expectation_under(d, worst, Sign::minus_x), 1.8, 1e-12));

  const auto point = from_scenarios(std::vector<double>{4.0}, std::vector<double>{1.0});
  const auto only = worst_case_measure(point, Level(0.3));
  CHECK(only.density(0) == 1.0);

  // Boundary case: the cut atom takes density exactly 1/alpha.
  const auto coin = from_scenarios(std::vector<double>{-1.0, 1.0}, std::vector<double>{0.5, 0.5});
  const auto worst_coin = worst_case_measure(coin, Level(0.5));
  CHECK(worst_coin.density(0) == 2.0);
  CHECK(worst_coin.density(1) == 0.0);
  CHECK(expectation_under(coin, worst_coin, Sign::minus_x) == 1.0);
  CHECK(expected_shortfall(coin, Level(0.5)) == 1.0);
}

TEST_CASE("worst_case_measure attains the shortfall and stays feasible") {
  TestRng rng(601);
  int violations = 0;
  for (int it = 0; it < 2000; ++it) {
    const auto d = esdual::testing::random_distribution(rng, 100);
    const Level alpha = esdual::testing::random_level(rng);
    const auto worst = worst_case_measure(d, alpha);
    if (!is_feasible(worst, alpha)) ++violations;
    if (!close(expectation_under(d, worst, Sign::minus_x), expected_shortfall(d, alpha), 1e-12)) {
      ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("dual_value_greedy worked values") {
  CHECK(close(dual_value_greedy(reference_law(), Level(0.25)), 1.8, 1e-12));

  const auto point = from_scenarios(std::vector<double>{-6.5}, std::vector<double>{1.0});
  CHECK(dual_value_greedy(point, Level(0.8)) == 6.5);

  const auto three = from_scenarios(std::vector<double>{-1.0, 0.0, 2.0},
                                    std::vector<double>{0.3, 0.3, 0.4});
  CHECK(close(dual_value_greedy(three, Level(0.5)), 0.6, 1e-12));
}

TEST_CASE("greedy optimum equals the closed form on random laws") {
  TestRng rng(602);
  int violations = 0;
  for (int it = 0; it < 2000; ++it) {
    const auto d = esdual::testing::random_distribution(rng, 100);
    const Level alpha = esdual::testing::random_level(rng);
    if (!close(dual_value_greedy(d, alpha), expected_shortfall(d, alpha), 1e-9)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("greedy_vertex in ascending order attains the shortfall") {
  TestRng rng(603);
  int violations = 0;
  for (int it = 0; it < 500; ++it) {
    const auto d = esdual::testing::random_distribution(rng, 50);
    const Level alpha = esdual::testing::random_level(rng);
    std::vector<std::size_t> identity(d.size());
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    const auto vertex = greedy_vertex(d, alpha, identity);
    if (!is_feasible(vertex, alpha)) ++violations;
    if (!close(expectation_under(d, vertex, Sign::minus_x), expected_shortfall(d, alpha), 1e-12)) {
      ++violations;
    }
  }
  CHECK(violations == 0);

  CHECK_THROWS_AS(greedy_vertex(reference_law(), Level(0.5), std::vector<std::size_t>{0, 1}),
                  LengthMismatch);
}

TEST_CASE("sample_feasible_measure is deterministic and feasible") {
  TestRng rng(604);
  for (int it = 0; it < 50; ++it) {
    const auto d = esdual::testing::random_distribution(rng, 60);
    const Level alpha = esdual::testing::random_level(rng);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto q1 = sample_feasible_measure(d, alpha, seed);
      const auto q2 = sample_feasible_measure(d, alpha, seed);
      REQUIRE(is_feasible(q1, alpha));
      REQUIRE(std::equal(q1.densities().begin(), q1.densities().end(),
                         q2.densities().begin(), q2.densities().end()));
    }
  }

  const auto point = from_scenarios(std::vector<double>{3.0}, std::vector<double>{1.0});
  for (std::uint64_t seed : {0ull, 7ull, 123456789ull}) {
    CHECK(sample_feasible_measure(point, Level(0.2), seed).density(0) == 1.0);
  }
}

TEST_CASE("sampled measures never beat the shortfall") {
  const auto d = reference_law();
  const Level alpha(0.25);
  const double es = expected_shortfall(d, alpha);
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const double value =
        expectation_under(d, sample_feasible_measure(d, alpha, seed), Sign::minus_x);
    best = std::max(best, value);
    REQUIRE(value <= es + 1e-9);
  }
  // The ascending-order vertex is the maximizer, so the sweep gets close to
  // the optimum and the identity traversal attains it exactly.
  std::vector<std::size_t> identity(d.size());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  const auto top = greedy_vertex(d, alpha, identity);
  CHECK(close(expectation_under(d, top, Sign::minus_x), es, 1e-12));
  CHECK(best <= es + 1e-9);
  CHECK(best >= es - 1e-9);  // some permutation of 4 atoms is ascending
}

TEST_CASE("acceptance_check sign dichotomy") {
  const auto d = reference_law();
  const Level alpha(0.25);

  SUBCASE("clearly non-positive shortfall") {
    const auto check = acceptance_check(shift(d, 2.0), alpha);
    CHECK(check.sign == EsSign::non_positive);
    CHECK(close(check.es, -0.2, 1e-12));
    CHECK(!check.witness.has_value());
    // Every feasible measure keeps a nonnegative expectation.
    const auto moved = shift(d, 2.0);
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
      REQUIRE(expectation_under(moved, sample_feasible_measure(moved, alpha, seed),
                                Sign::plus_x) >= -1e-9);
    }
  }

  SUBCASE("positive shortfall produces an exact witness") {
    const auto moved = shift(d, 1.6);
    const auto check = acceptance_check(moved, alpha);
    CHECK(check.sign == EsSign::positive);
    CHECK(close(check.es, 0.2, 1e-12));
    REQUIRE(check.witness.has_value());
    CHECK(is_feasible(*check.witness, alpha));
    CHECK(close(expectation_under(moved, *check.witness, Sign::plus_x), -0.2, 1e-12));
  }

  SUBCASE("shift by the shortfall lands on the boundary") {
    const double es = expected_shortfall(d, alpha);
    const auto check = acceptance_check(shift(d, es), alpha);
    CHECK(std::abs(check.es) <= 1e-12);
    CHECK((check.sign == EsSign::positive) == (check.es > 0.0));
  }

  SUBCASE("dyadic inputs make the boundary branch exact") {
    const auto dy = dyadic_law();
    CHECK(expected_shortfall(dy, alpha) == 2.0);
    const auto boundary = acceptance_check(shift(dy, 2.0), alpha);
    CHECK(boundary.es == 0.0);
    CHECK(boundary.sign == EsSign::non_positive);
    CHECK(!boundary.witness.has_value());
  }
}

TEST_CASE("verify_subadditivity worked cases") {
  const auto x_values = std::vector<double>{-3.0, -1.0, 2.0, 5.0};
  std::vector<double> y_neg(x_values);
  for (double& v : y_neg) v = -v;

  const FiniteSpace mirrored({0.1, 0.2, 0.3, 0.4}, {{"X", x_values}, {"Y", y_neg}});
  const auto cancel = verify_subadditivity(mirrored, "X", "Y", Level(0.25));
  CHECK(cancel.lhs == 0.0);  // ES of the zero position
  CHECK(cancel.holds);

  const FiniteSpace doubled({0.1, 0.2, 0.3, 0.4}, {{"X", x_values}, {"Y", x_values}});
  const auto equal = verify_subadditivity(doubled, "X", "Y", Level(0.25));
  CHECK(close(equal.lhs, equal.rhs, 1e-9));  // positive homogeneity
  CHECK(equal.holds);

  CHECK_THROWS_AS(verify_subadditivity(mirrored, "X", "Z", Level(0.5)), MissingVariable);
}

TEST_CASE("subadditivity on random spaces and grids") {
  TestRng rng(605);
  int violations = 0;
  for (int it = 0; it < 400; ++it) {
    const auto space = esdual::testing::random_space(rng, 2, 10);
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      if (!verify_subadditivity(space, "X", "Y", Level(a)).holds) ++violations;
    }
  }
  CHECK(violations == 0);
}
