#include <doctest.h>

#include "gmtk/problem.hpp"
#include "instances.hpp"
#include "oracle.hpp"

using namespace gmtk;

TEST_CASE("evaluate on the tiny instance") {
  const Problem p = fixtures::t1();
  CHECK(evaluate(p, {0, 1}) == -7.0);
  CHECK(evaluate(p, {1, 0}) == -6.0);
  CHECK(evaluate(p, {0, kDummy}) == -1.0);
  CHECK(evaluate(p, {kDummy, kDummy}) == 0.0);
}

TEST_CASE("evaluate rejects infeasible labelings") {
  const Problem p = fixtures::t1();
  CHECK_THROWS_AS(evaluate(p, {0, 0}), InfeasibleError);  // duplicate label
  CHECK_THROWS_AS(evaluate(p, {2, 1}), InvalidLabelingError);
}

TEST_CASE("is_feasible never throws") {
  const Problem p = fixtures::t1();
  CHECK(is_feasible(p, {0, 1}));
  CHECK(is_feasible(p, {kDummy, kDummy}));
  CHECK_FALSE(is_feasible(p, {0, 0}));
  CHECK_FALSE(is_feasible(p, {5, 1}));
  CHECK_FALSE(is_feasible(p, {-7, 1}));
}

TEST_CASE("construction validation") {
  CHECK_THROWS_AS(Problem(1, 1, {{0, 0, 0.0}, {0, 0, 1.0}}, {}), Error);
  CHECK_THROWS_AS(Problem(1, 2, {{0, 0, 0.0}, {0, 1, 0.0}}, {{0, 1, 1.0}}),
                  Error);  // same node
  CHECK_THROWS_AS(Problem(2, 1, {{0, 0, 0.0}, {1, 0, 0.0}}, {{0, 1, 1.0}}),
                  Error);  // same label
  CHECK_THROWS_AS(Problem(1, 1, {{0, 5, 0.0}}, {}), Error);
  CHECK_THROWS_AS(Problem(1, 1, {{3, 0, 0.0}}, {}), Error);
  CHECK_THROWS_AS(
      Problem(2, 2, {{0, 0, 0.0}, {1, 1, 0.0}}, {{0, 1, 1.0}, {1, 0, 2.0}}),
      Error);  // duplicate pair
}

TEST_CASE("accessors") {
  const Problem p = fixtures::t1();
  CHECK(p.assignment_id(0, 1) == 1);
  CHECK(p.assignment_id(1, 1) == 3);
  CHECK(p.pairwise_cost(0, 3) == -5.0);
  CHECK(p.pairwise_cost(3, 0) == -5.0);
  CHECK(p.pairwise_cost(0, 1) == 0.0);
  CHECK(p.is_bijective());
  CHECK_FALSE(p.has_zero_unaries());
  CHECK(p.is_non_positive());
}

TEST_CASE("evaluate agrees with the independent oracle") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Problem p = oracle::random_instance(rng);
    const Labeling y = oracle::random_feasible(p, rng);
    REQUIRE(is_feasible(p, y));
    CHECK(evaluate(p, y) == doctest::Approx(oracle::energy(p, y)).epsilon(1e-12));
  }
}

TEST_CASE("brute_force_solve matches the independent enumerator") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const Problem p = oracle::random_instance(rng);
    const auto [y, e] = brute_force_solve(p);
    const auto [oy, oe] = oracle::best(p);
    CHECK(e == doctest::Approx(oe).epsilon(1e-12));
    CHECK(y == oy);
    CHECK(is_feasible(p, y));
  }
}

TEST_CASE("brute_force_solve refuses oversized instances") {
  std::vector<Assignment> assignments;
  for (int i = 0; i < 9; ++i) {
    for (int s = 0; s < 9; ++s) assignments.push_back({i, s, -1.0});
  }
  const Problem big(9, 9, std::move(assignments), {});
  CHECK_THROWS_AS(brute_force_solve(big), SizeError);
}

TEST_CASE("to_dense reproduces evaluate through x^T C x") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    const Problem p = oracle::random_instance(rng, 4, 4);
    const Labeling y = oracle::random_feasible(p, rng);
    const auto dense = to_dense(p);
    const int nl = p.num_labels();
    double quad = 0.0;
    for (int i = 0; i < p.num_nodes(); ++i) {
      if (y[i] == kDummy) continue;
      for (int j = 0; j < p.num_nodes(); ++j) {
        if (y[j] == kDummy) continue;
        quad += dense[i * nl + y[i]][j * nl + y[j]];
      }
    }
    CHECK(quad == doctest::Approx(evaluate(p, y)).epsilon(1e-9));
  }
}

TEST_CASE("indicator marks exactly the active assignments") {
  const Problem p = fixtures::t1();
  const FractionalSolution x = indicator(p, {0, 1});
  CHECK(x == FractionalSolution{1.0, 0.0, 0.0, 1.0});
}
