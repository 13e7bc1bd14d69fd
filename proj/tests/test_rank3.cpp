#include <doctest.h>

#include <algorithm>

#include "bruhat/errors.hpp"
#include "bruhat/matching.hpp"
#include "bruhat/rank3.hpp"
#include "helpers.hpp"

using namespace th;

namespace {

// All detected instances of one scenario over every matching with base a.
std::vector<std::pair<PartialMatching, ScenarioInstance>> instances(const BallPtr& b, Generator a, Scenario kind) {
  std::vector<std::pair<PartialMatching, ScenarioInstance>> out;
  for (const MatchingFamily& f : enumerate_families(b->matrix(), a, b->bound())) {
    PartialMatching phi = extend_maximal(f, b);
    for (const ScenarioInstance& i : detect_scenarios(phi))
      if (i.config.kind == kind) out.emplace_back(phi, i);
  }
  return out;
}

// The predicted word, inverted for instances found on the mirrored matching.
std::string expected(const GroupBall& b, const ScenarioInstance& inst, const std::string& w) {
  const Element e = reduce(b.matrix(), b.matrix().parse(w));
  return b.format(inst.mirrored ? b.inverse(b.id(e)) : b.id(e));
}

bool minimal_excluded(const PartialMatching& phi, ElemId w) {
  if (phi.status(w) != Status::Excluded) return false;
  for (ElemId x : phi.ball().coatoms(w))
    if (!phi.in_domain(x)) return false;
  return true;
}

}  // namespace

TEST_CASE("scenario names") {
  CHECK(scenario_name(Scenario::I2) == "I2");
  CHECK(scenario_name(Scenario::III1_2) == "III1_2");
  CHECK(scenario_name(Scenario::IV4) == "IV4");
}

TEST_CASE("Gamma and Gamma' words") {
  const CoxeterMatrix m = rank3(3, 3, 2);  // a = s0, b = s1, b' = s2
  const Roles r{s0, s1, s2};
  CHECK(m.format(gamma_word(m, r)) == "s0.s2.s1.s0");
  CHECK(m.format(gamma_prime_word(m, r)) == "s0.s2.s0.s1.s0");
  const CoxeterMatrix m45 = rank3(4, 5, 2);
  CHECK(gamma_prime_word(m45, r).size() == 4 + 5 - 1);
}

TEST_CASE("degenerate m_ab' = 2, m_bb' = 4: abb'b is a minimal obstruction") {
  BallPtr b = GroupBall::build(rank3(4, 2, 4), 9);  // a = s0, b = s1, b' = s2
  auto found = instances(b, s0, Scenario::IV3);
  REQUIRE_FALSE(found.empty());
  for (const auto& [phi, inst] : found) {
    REQUIRE(inst.predicted.size() == 1);
    CHECK(b->format(inst.predicted[0]) == expected(*b, inst, "s0.s1.s2.s1"));
    CHECK(minimal_excluded(phi, inst.predicted[0]));
  }
}

TEST_CASE("degenerate m_ab' = 2, m_bb' = 3: abb'ab is a minimal obstruction") {
  BallPtr b = GroupBall::build(rank3(4, 2, 3), 9);
  auto found = instances(b, s0, Scenario::IV4);
  REQUIRE_FALSE(found.empty());
  for (const auto& [phi, inst] : found) {
    REQUIRE(inst.predicted.size() == 1);
    CHECK(b->format(inst.predicted[0]) == expected(*b, inst, "s0.s1.s2.s0.s1"));
    CHECK(minimal_excluded(phi, inst.predicted[0]));
  }
}

TEST_CASE("crossed, β not a-left-regular: ab'[b,a,t> is a minimal obstruction") {
  BallPtr b = GroupBall::build(rank3(5, 4, 2), 11);
  auto found = instances(b, s0, Scenario::II1);
  REQUIRE_FALSE(found.empty());
  for (const auto& [phi, inst] : found) {
    const Roles& r = inst.config.roles;
    Word w{r.a, r.bp};
    const Word tail = alternating(r.b, r.a, inst.config.t, AltForm::Prefix);
    w.insert(w.end(), tail.begin(), tail.end());
    const ElemId e = b->id(reduce(b->matrix(), w));
    REQUIRE(inst.predicted.size() == 1);
    CHECK(inst.predicted[0] == (inst.mirrored ? b->inverse(e) : e));
    CHECK(minimal_excluded(phi, inst.predicted[0]));
  }
}

TEST_CASE("crossed, m_ab' >= 5: ab'ba is a minimal obstruction") {
  BallPtr b = GroupBall::build(rank3(3, 5, 2), 11);
  auto found = instances(b, s0, Scenario::II3);
  REQUIRE_FALSE(found.empty());
  for (const auto& [phi, inst] : found) {
    for (ElemId w : inst.predicted) CHECK(minimal_excluded(phi, w));
  }
}

TEST_CASE("predictions outside the hypotheses are refused") {
  BallPtr b = GroupBall::build(rank3(3, 3, 3), 7);
  ScenarioConfig c{Scenario::IV3, Roles{s0, s1, s2}, 1, -1};
  CHECK_THROWS_AS(predict_obstructions(*b, c), ScenarioNotCovered);
  ScenarioConfig i3{Scenario::I3, Roles{s0, s1, s2}, 0, -1};
  CHECK_THROWS_AS(predict_obstructions(*b, i3), ScenarioNotCovered);
}

TEST_CASE("m_bb' > 2, non-crossed: full iff right multiplication") {
  BallPtr b = GroupBall::build(rank3(3, 3, 3), 9);
  const PartialMatching rho = multiplication_matching(b, s0, Side::Right);
  for (const MatchingFamily& f : enumerate_families(b->matrix(), s0, 9)) {
    const PartialMatching phi = extend_maximal(f, b);
    const CrossClassification c = classify_cross(phi);
    if (c.crossed || c.left_type) continue;
    CHECK(is_full_matching(phi) == (phi == rho));
  }
}

TEST_CASE("m_ab' = m_bb' = 2: domain is everything") {
  BallPtr b = GroupBall::build(rank3(5, 2, 2), 8);
  for (const MatchingFamily& f : enumerate_families(b->matrix(), s0, 8)) {
    const PartialMatching phi = extend_maximal(f, b);
    for (ElemId w = 0; w < b->size() && b->len(w) <= phi.reliable_bound(); ++w) CHECK(phi.in_domain(w));
    CHECK(is_regular(phi, s2, Side::Left));
  }
}
