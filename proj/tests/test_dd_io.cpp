#include <doctest.h>

#include <random>
#include <sstream>

#include "gmtk/dd_io.hpp"
#include "instances.hpp"
#include "oracle.hpp"

using namespace gmtk;

TEST_CASE("parse the tiny golden file") {
  const Problem p = load_dd(fixtures::data_path("t1.dd"));
  CHECK(p == fixtures::t1());
  CHECK(evaluate(p, {0, 1}) == -7.0);
}

TEST_CASE("round trip is the identity on the canonical form") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const Problem p = oracle::random_instance(rng);
    const std::string text = write_dd(p);
    const Problem q = parse_dd(text);
    CHECK(p == q);
    CHECK(write_dd(q) == text);
  }
}

TEST_CASE("geometry lines are preserved but do not affect costs") {
  const std::string text =
      "p 2 2 4 2\n"
      "a 0 0 0 -1\n"
      "a 1 0 1 -2\n"
      "a 2 1 0 -3\n"
      "a 3 1 1 -1\n"
      "e 0 3 -5\n"
      "e 1 2 -1\n"
      "i0 0 1.5 2.5\n"
      "i1 1 -3 4\n"
      "n0 0 1\n"
      "n1 0 1\n";
  const Problem p = parse_dd(text);
  CHECK(p == fixtures::t1());  // equality ignores geometry
  CHECK(evaluate(p, {0, 1}) == -7.0);
  CHECK(p.geometry().left_coords.size() == 1);
  CHECK(p.geometry().right_coords.size() == 1);
  CHECK(p.geometry().left_neighbors.size() == 1);
  const Problem q = parse_dd(write_dd(p));
  CHECK(write_dd(q) == write_dd(p));
}

namespace {

void check_error(const std::string& text, int expected_line) {
  try {
    parse_dd(text);
    FAIL("expected a ParseError for: ", text);
  } catch (const ParseError& e) {
    CHECK(e.line() == expected_line);
  }
}

}  // namespace

TEST_CASE("parse errors carry line numbers") {
  check_error("a 0 0 0 -1\n", 1);                       // before prologue
  check_error("p 1 1 1 0\np 1 1 1 0\na 0 0 0 1\n", 2);  // duplicate prologue
  check_error("p 1 1 1 0\nz 0\n", 2);                   // unknown tag
  check_error("p 1 1 1 0\na 1 0 0 1\n", 2);             // id out of range
  check_error("p 1 1 1 0\na 0 3 0 1\n", 2);             // node out of range
  check_error("p 1 1 1 0\na 0 0 9 1\n", 2);             // label out of range
  check_error("p 1 1 1 0\na 0 0 0 nan\n", 2);           // NaN rejected
  check_error("p 1 1 1 0\na 0 0 0 inf\n", 2);           // infinity rejected
  check_error("p 1 1 1 0\na 0 0 0 1 7\n", 2);           // trailing token
  check_error("p 1 1 1 0\na 0 0 0\n", 2);               // missing cost
  check_error("p 2 2 2 1\na 0 0 0 1\na 1 1 1 1\ne 0 5 1\n", 4);
}

TEST_CASE("count mismatches and missing prologue") {
  CHECK_THROWS_AS(parse_dd(std::string("")), ParseError);
  CHECK_THROWS_AS(parse_dd(std::string("c only a comment\n")), ParseError);
  CHECK_THROWS_AS(parse_dd(std::string("p 1 1 2 0\na 0 0 0 1\n")), ParseError);
  CHECK_THROWS_AS(parse_dd(std::string("p 1 1 1 1\na 0 0 0 1\n")), ParseError);
}

TEST_CASE("structural errors surface as parse errors") {
  // duplicate (node, label) pair
  CHECK_THROWS_AS(parse_dd(std::string("p 1 1 2 0\na 0 0 0 1\na 1 0 0 2\n")),
                  ParseError);
  // edge between candidates of the same node
  CHECK_THROWS_AS(parse_dd(std::string(
                      "p 1 2 2 1\na 0 0 0 1\na 1 0 1 1\ne 0 1 5\n")),
                  ParseError);
}

TEST_CASE("duplicate assignment id") {
  const std::string text = "p 1 2 2 0\na 0 0 0 1\na 0 0 1 1\n";
  try {
    parse_dd(text);
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("blank lines and comments are skipped") {
  const Problem p = parse_dd(std::string(
      "c header\n\np 1 1 1 0\nc interlude\na 0 0 0 -2.5\n\n"));
  CHECK(p.num_assignments() == 1);
  CHECK(p.assignment(0).cost == -2.5);
}

TEST_CASE("costs survive a round trip bit-exactly") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double c = dist(rng) * std::pow(10.0, int(rng() % 19) - 9);
    const Problem p(1, 1, {{0, 0, c}}, {});
    CHECK(parse_dd(write_dd(p)).assignment(0).cost == c);
  }
}
