#include <doctest.h>

#include <random>

#include "gmtk/lap.hpp"
#include "gmtk/transforms.hpp"
#include "instances.hpp"
#include "oracle.hpp"

using namespace gmtk;

TEST_CASE("gm_to_qap preserves the optimum with zero shift") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const Problem p = oracle::random_instance(rng, 4, 4);
    const auto [q, report] = gm_to_qap(p);
    CHECK(q.is_bijective());
    CHECK(report.shift == 0.0);
    const auto [oy, oe] = oracle::best(p);
    const auto [qy, qe] = oracle::best_complete(q);
    CHECK(qe == doctest::Approx(oe).epsilon(1e-9));
    const Labeling back = pull_back(p, q, report, qy);
    REQUIRE(is_feasible(p, back));
    CHECK(evaluate(p, back) == doctest::Approx(oe).epsilon(1e-9));
  }
}

TEST_CASE("qap_to_gm: optimal incomplete matchings become complete") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 30; ++t) {
    const Problem p = oracle::random_bijective(rng, 4);
    for (QapToGmMode mode :
         {QapToGmMode::kUnaryOnly, QapToGmMode::kFullShift}) {
      const auto [q, report] = qap_to_gm(p, mode);
      const auto [oy, oe] = oracle::best_complete(p);
      const auto [qy, qe] = oracle::best(q);
      CHECK(qe + (-report.shift) == doctest::Approx(oe).epsilon(1e-6));
      for (int v : qy) CHECK(v != kDummy);  // completion always pays off
      CHECK(oracle::energy(p, qy) ==
            doctest::Approx(oracle::energy(q, qy) - report.shift)
                .epsilon(1e-6));
    }
  }
}

TEST_CASE("qap_to_gm full shift makes all costs negative") {
  std::mt19937_64 rng(43);
  const Problem p = oracle::random_bijective(rng, 4);
  const auto [q, report] = qap_to_gm(p, QapToGmMode::kFullShift);
  for (const Assignment& a : q.assignments()) CHECK(a.cost < 0.0);
  for (const Edge& e : q.edges()) CHECK(e.cost < 0.0);
}

TEST_CASE("qap_to_gm requires a bijective input") {
  const Problem p(1, 2, {{0, 0, 1.0}, {0, 1, 2.0}}, {});
  CHECK_THROWS_AS(qap_to_gm(p), Error);
}

TEST_CASE("make_non_positive preserves complete-matching differences") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 50; ++t) {
    const Problem p = oracle::random_bijective(rng, 4);
    const auto [q, report] = make_non_positive(p);
    CHECK(q.is_non_positive());
    const Labeling y1 = oracle::random_complete(p, rng);
    const Labeling y2 = oracle::random_complete(p, rng);
    const double d_orig = oracle::energy(p, y1) - oracle::energy(p, y2);
    const double d_new = oracle::energy(q, y1) - oracle::energy(q, y2);
    CHECK(d_new == doctest::Approx(d_orig).epsilon(1e-9));
    CHECK(oracle::energy(q, y1) ==
          doctest::Approx(oracle::energy(p, y1) + report.shift).epsilon(1e-9));
    // same argmin over complete matchings
    const auto [oy, oe] = oracle::best_complete(p);
    const auto [qy, qe] = oracle::best_complete(q);
    CHECK(qe == doctest::Approx(oe + report.shift).epsilon(1e-9));
  }
}

TEST_CASE("make_non_positive requires a bijective input") {
  const Problem p(1, 2, {{0, 0, 1.0}, {0, 1, 2.0}}, {});
  CHECK_THROWS_AS(make_non_positive(p), Error);
}

TEST_CASE("remove_unary zeroes the unaries and keeps complete energies") {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 50; ++t) {
    const Problem p = oracle::random_bijective(rng, 4);
    const auto [q, report] = remove_unary(p);
    CHECK(q.has_zero_unaries());
    CHECK(report.shift == 0.0);
    for (int k = 0; k < 5; ++k) {
      const Labeling y = oracle::random_complete(p, rng);
      CHECK(oracle::energy(q, y) ==
            doctest::Approx(oracle::energy(p, y)).epsilon(1e-9));
    }
  }
}

TEST_CASE("remove_unary needs two nodes") {
  const Problem p(1, 1, {{0, 0, 3.0}}, {});
  CHECK_THROWS_AS(remove_unary(p), Error);
}

TEST_CASE("negate_for_max is an involution that negates energies") {
  std::mt19937_64 rng(46);
  for (int t = 0; t < 30; ++t) {
    const Problem p = oracle::random_instance(rng);
    const Problem n = negate_for_max(p);
    const Labeling y = oracle::random_feasible(p, rng);
    CHECK(oracle::energy(n, y) == -oracle::energy(p, y));
    CHECK(negate_for_max(n) == p);
  }
}

TEST_CASE("ilap_to_lap matches incomplete enumeration") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 50; ++t) {
    Problem p = oracle::random_instance(rng);
    p = Problem(p.num_nodes(), p.num_labels(), p.assignments(), {});
    const LapInstance reduced = ilap_to_lap(p);
    const LapSolution sol = solve_lap(reduced);
    const auto [oy, oe] = oracle::best(p);
    CHECK(sol.value == doctest::Approx(oe).epsilon(1e-9));
  }
}

TEST_CASE("ilap_to_lap rejects pairwise terms") {
  CHECK_THROWS_AS(ilap_to_lap(fixtures::t1()), Error);
}

TEST_CASE("transform chains compose on the tiny instance") {
  const Problem p = fixtures::t1();
  const auto [q, r1] = gm_to_qap(p);
  const auto [n, r2] = make_non_positive(q);
  const auto [qy, qe] = oracle::best_complete(n);
  CHECK(qe - r2.shift == doctest::Approx(-7.0));
  const Labeling back = pull_back(p, q, r1, pull_back(q, n, r2, qy));
  CHECK(evaluate(p, back) == -7.0);
}
