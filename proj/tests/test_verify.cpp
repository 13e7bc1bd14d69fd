#include <doctest.h>

#include "bruhat/errors.hpp"
#include "bruhat/verify.hpp"
#include "helpers.hpp"

using namespace th;

namespace {

Corpus small() {
  Corpus c;
  c.cases.push_back({"I2(4)", CoxeterMatrix::dihedral(4), 6});
  c.cases.push_back({"rank3(3,3,2)", rank3(3, 3, 2), 7});
  c.cases.push_back({"rank3(2,3,4)", rank3(2, 3, 4), 8});
  return c;
}

}  // namespace

TEST_CASE("default bounds") {
  CHECK(default_bound(CoxeterMatrix::dihedral(3)) == 5);
  CHECK(default_bound(rank3(2, 4, 5)) == 7);
  CHECK(default_bound(CoxeterMatrix::dihedral(0)) == 6);
  CHECK(default_bound(CoxeterMatrix::dihedral(20)) == 12);
}

TEST_CASE("standard corpus shape") {
  const Corpus c = Corpus::standard();
  CHECK(c.cases.size() == 6 + 20 + 10 + 1);
  for (const CorpusCase& k : c.cases) {
    CHECK(k.bound >= 1);
    CHECK(k.bound <= 12);
    // every finite M_st fits in the ball
    for (Generator s : k.matrix.generators())
      for (Generator t : k.matrix.generators())
        if (s < t && k.matrix.finite(s, t)) CHECK(k.matrix.m(s, t) <= k.bound);
  }
}

TEST_CASE("corpus JSON round trip") {
  const Corpus c = Corpus::invariance();
  const Corpus d = Corpus::from_json(c.to_json());
  REQUIRE(d.cases.size() == c.cases.size());
  CHECK(d.pairs.size() == c.pairs.size());
  CHECK(d.to_json() == c.to_json());
  CHECK_THROWS_AS(Corpus::from_json(nlohmann::json::parse("{}")), InvalidInput);
  CHECK_THROWS_AS(Corpus::from_json(nlohmann::json::parse(R"({"cases":[{"bound":3}]})")), InvalidInput);
}

TEST_CASE("every suite passes on a small corpus") {
  for (const std::string& name : suite_names()) {
    if (name == "whole-group") continue;
    const SuiteReport r = run_suite(name, small());
    INFO(r.to_text());
    CHECK(r.pass());
    CHECK_FALSE(r.budget_exceeded);
    CHECK(r.cases.size() == 3);
  }
  Corpus finite;
  finite.cases.push_back({"A3", path(3, {3, 3}), 6});
  finite.cases.push_back({"A1xI2(3)", rank3(2, 2, 3), 4});
  CHECK(run_suite("whole-group", finite).pass());
}

TEST_CASE("reports are reproducible and independent of the worker count") {
  const std::string one = run_suite("descent", small(), {1}).to_json().dump();
  const std::string four = run_suite("descent", small(), {4}).to_json().dump();
  CHECK(one == four);
  CHECK(one == run_suite("descent", small(), {1}).to_json().dump());
}

TEST_CASE("a failing case carries its counterexample") {
  Corpus c;
  c.cases.push_back({"not finite", CoxeterMatrix::dihedral(0), 4});
  const SuiteReport r = run_suite("whole-group", c);
  CHECK_FALSE(r.pass());
  const nlohmann::json j = r.to_json();
  CHECK(j["cases"][0]["counterexample"].contains("matrix"));
  CHECK(j["cases"][0]["counterexample"].contains("detail"));
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(run_suite("nope", small()), InvalidInput); }
