#include <doctest.h>

#include <algorithm>

#include "bruhat/errors.hpp"
#include "bruhat/matching.hpp"
#include "bruhat/serialize.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace th;

namespace {

std::vector<ElemId> domain_partners(const PartialMatching& phi) {
  std::vector<ElemId> out(phi.ball().size(), kNone);
  for (ElemId x = 0; x < phi.ball().size(); ++x)
    if (phi.in_domain(x)) out[x] = phi.partner(x);
  return out;
}

}  // namespace

TEST_CASE("dihedral matching counts") {
  const std::vector<std::size_t> expect{1, 2, 4, 8, 16};
  for (int m = 2; m <= 6; ++m) CHECK(enumerate_dihedral_matchings(s0, s1, m, m).size() == expect[m - 2]);
  CHECK(enumerate_dihedral_matchings(s0, s1, kInfinity, 6).size() == 32);
}

TEST_CASE("dihedral matchings agree with brute force over involutions") {
  for (int m = 2; m <= 6; ++m) {
    BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(m), m);
    for (Generator a : {s0, s1}) {
      const Generator s = a == s0 ? s1 : s0;
      auto brute = oracle::brute_dihedral_matchings(*b, b->id(Word{a}), m);
      std::vector<std::vector<ElemId>> lib;
      for (const DihedralMatching& d : enumerate_dihedral_matchings(a, s, m, m)) {
        PartialMatching phi = dihedral_as_partial(d);
        lib.push_back(domain_partners(phi));
      }
      std::sort(brute.begin(), brute.end());
      std::sort(lib.begin(), lib.end());
      CHECK(lib == brute);
    }
  }
}

TEST_CASE("m=4 has a matching that is neither multiplication") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(4), 4);
  int other = 0;
  for (const DihedralMatching& d : enumerate_dihedral_matchings(s0, s1, 4, 4)) {
    PartialMatching phi = extend_maximal(MatchingFamily{s0, {d}}, b);
    if (phi != multiplication_matching(b, s0, Side::Left) && phi != multiplication_matching(b, s0, Side::Right)) ++other;
  }
  CHECK(other == 2);
}

TEST_CASE("special matching check") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(3), 3);
  const PartialMatching rho = multiplication_matching(b, s0, Side::Right);
  CHECK(is_special_matching(rho).ok);
  std::vector<ElemId> map(b->size(), kNone);
  auto pair = [&](const char* x, const char* y) {
    map[b->parse(x)] = b->parse(y);
    map[b->parse(y)] = b->parse(x);
  };
  pair("e", "s0");
  pair("s1", "s1.s0");
  pair("s0.s1", "s0.s1.s0");
  const LowerSet all(*b, {0, 1, 2, 3, 4, 5});
  CHECK(is_special_matching(*b, map, all).ok);
  CHECK(map == domain_partners(rho));

  std::vector<ElemId> bad = map;
  bad[b->parse("e")] = b->parse("s0.s1");
  bad[b->parse("s0.s1")] = b->parse("e");
  const MatchingCheck c = is_special_matching(*b, bad, all);
  CHECK_FALSE(c.ok);
  CHECK(c.clause == 2);
}

TEST_CASE("broken clause (iii) is reported at the offending element") {
  BallPtr b = GroupBall::build(rank3(2, 2, 2), 3);
  std::vector<ElemId> map(b->size(), kNone);
  auto pair = [&](const char* x, const char* y) {
    map[b->parse(x)] = b->parse(y);
    map[b->parse(y)] = b->parse(x);
  };
  pair("e", "s0");
  pair("s1", "s1.s2");
  pair("s2", "s0.s2");
  pair("s0.s1", "s0.s1.s2");
  std::vector<ElemId> all(b->size());
  for (ElemId x = 0; x < b->size(); ++x) all[x] = x;
  const MatchingCheck c = is_special_matching(*b, map, LowerSet(*b, all));
  CHECK_FALSE(c.ok);
  CHECK(c.clause == 3);
  CHECK(b->format(c.element) == "s1");
}

TEST_CASE("Z sets") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(3), 3);
  const PartialMatching rho = multiplication_matching(b, s0, Side::Right);
  CHECK(z_set(rho, b->identity()) == std::vector<ElemId>{b->identity()});
  std::vector<std::string> z = fmt(*b, z_set(rho, b->parse("s1")));
  std::sort(z.begin(), z.end());
  CHECK(z == std::vector<std::string>{"s0", "s1"});
  z = fmt(*b, z_set(rho, b->parse("s0.s1")));
  std::sort(z.begin(), z.end());
  CHECK(z == std::vector<std::string>{"s0.s1", "s1.s0"});
}

TEST_CASE("multiplication families extend to the whole ball") {
  for (const CoxeterMatrix& m : {rank3(3, 3, 3), rank3(2, 4, 5), path(3, {4, 3})}) {
    BallPtr b = GroupBall::build(m, 7);
    for (Side side : {Side::Left, Side::Right}) {
      const PartialMatching phi = extend_maximal(multiplication_family(m, s1, 7, side), b);
      CHECK(phi == multiplication_matching(b, s1, side));
      for (ElemId w = 0; w < b->size() && b->len(w) <= phi.reliable_bound(); ++w) CHECK(phi.in_domain(w));
      CHECK(restrict_to_principal(phi) == multiplication_family(m, s1, 7, side));
    }
  }
}

TEST_CASE("finite group: every element is resolved") {
  BallPtr b = GroupBall::build(path(3, {3, 3}), 6);
  REQUIRE(b->complete());
  const PartialMatching phi = extend_maximal(family_at(b->matrix(), s1, 6, 1), b);
  CHECK(phi.reliable_bound() == 6);
  CHECK(phi.unresolved().empty());
}

TEST_CASE("extension round trip over all rank-3 families") {
  for (const CoxeterMatrix& m : {rank3(2, 3, 4), rank3(3, 4, 5), rank3(2, 5, 5)}) {
    BallPtr b = GroupBall::build(m, 7);
    for (Generator a : m.generators())
      for (const MatchingFamily& f : enumerate_families(m, a, 7)) {
        const PartialMatching phi = extend_maximal(f, b);
        CHECK(is_special_matching(phi).ok);
        CHECK(restrict_to_principal(phi) == f);
        CHECK(extend_maximal(restrict_to_principal(phi), b) == phi);
      }
  }
}

TEST_CASE("maximal matchings that agree on P agree (uniqueness)") {
  const CoxeterMatrix m = rank3(3, 4, 4);
  BallPtr b = GroupBall::build(m, 7);
  const auto fams = enumerate_families(m, s0, 7);
  for (std::size_t i = 0; i < fams.size(); ++i)
    for (std::size_t j = i + 1; j < fams.size(); ++j) CHECK(extend_maximal(fams[i], b) != extend_maximal(fams[j], b));
}

TEST_CASE("mirror is an involution exchanging left and right") {
  const CoxeterMatrix m = rank3(3, 3, 4);
  BallPtr b = GroupBall::build(m, 7);
  CHECK(mirror(multiplication_matching(b, s2, Side::Left)) == multiplication_matching(b, s2, Side::Right));
  for (const MatchingFamily& f : enumerate_families(m, s2, 7)) {
    const PartialMatching phi = extend_maximal(f, b);
    const PartialMatching psi = mirror(phi);
    CHECK(mirror(psi) == phi);
    CHECK(is_special_matching(psi).ok);
    const CrossClassification a = classify_cross(phi), c = classify_cross(psi);
    CHECK(a.U == c.V);
    CHECK(a.V == c.U);
  }
}

TEST_CASE("regularity") {
  const CoxeterMatrix m = CoxeterMatrix::dihedral(3);
  BallPtr b = GroupBall::build(m, 3);
  const PartialMatching rho = multiplication_matching(b, s0, Side::Right);
  for (Generator s : {s0, s1}) CHECK(is_regular(rho, s, Side::Left));
  const auto members = enumerate_dihedral_matchings(s0, s1, 3, 3);
  for (const DihedralMatching& d : members)
    for (Generator x : {s0, s1}) CHECK(regularity_criterion_dihedral(d, x) == is_regular(d, x, Side::Left));

  const auto four = enumerate_dihedral_matchings(s0, s1, 4, 4);
  int irregular = 0;
  for (const DihedralMatching& d : four) {
    CHECK(regularity_criterion_dihedral(d, s1) == is_regular(d, s1, Side::Left));
    CHECK(regularity_criterion_dihedral(d, s0) == is_regular(d, s0, Side::Left));
    if (!is_regular(d, s0, Side::Left)) ++irregular;
  }
  CHECK(irregular >= 1);
}

TEST_CASE("orbits and reducibility") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(3), 3);
  const PartialMatching rho = multiplication_matching(b, s0, Side::Right);
  const auto o = orbits(rho);
  CHECK(o.size() == 3);
  CHECK(o.front().low == b->identity());
  CHECK(b->format(o.front().high) == "s0");
  CHECK(is_reducible(rho).reducible);

  BallPtr r3 = GroupBall::build(rank3(3, 3, 3), 7);
  const PartialMatching r = multiplication_matching(r3, s0, Side::Right);
  const ReducibilityReport rep = is_reducible(r);
  CHECK(rep.reducible);
  for (const OrbitWitness& w : rep.full_orbits) CHECK(w.witness.has_value());
  CHECK(orbits(r).size() * 2 == r.domain().size());
}

TEST_CASE("fullness") {
  BallPtr a3 = GroupBall::build(path(3, {3, 3}), 6);
  CHECK(is_full_matching(multiplication_matching(a3, s0, Side::Right)));
  BallPtr inf = GroupBall::build(rank3(3, 3, 0), 6);
  for (const MatchingFamily& f : enumerate_families(inf->matrix(), s0, 6))
    CHECK_FALSE(is_full_matching(extend_maximal(f, inf)));
  BallPtr r3 = GroupBall::build(rank3(3, 3, 3), 7);
  for (const MatchingFamily& f : enumerate_families(r3->matrix(), s0, 7)) {
    const PartialMatching phi = extend_maximal(f, r3);
    if (classify_cross(phi).crossed) CHECK_FALSE(is_full_matching(phi));
  }
}

TEST_CASE("cross classification and the G/D product") {
  BallPtr b = GroupBall::build(rank3(3, 3, 2), 7);
  const auto rho = classify_cross(multiplication_matching(b, s0, Side::Right));
  const auto lam = classify_cross(multiplication_matching(b, s0, Side::Left));
  CHECK(rho.V.empty());
  CHECK(lam.U.empty());
  CHECK_FALSE(rho.crossed);

  int crossed = 0;
  for (const MatchingFamily& f : enumerate_families(b->matrix(), s0, 7)) {
    const PartialMatching phi = extend_maximal(f, b);
    const CrossClassification c = classify_cross(phi);
    CHECK(gd_membership(*b, b->identity(), c.G, c.D));
    if (!c.crossed) continue;
    ++crossed;
    const Generator u = c.U.members().front(), v = c.V.members().front();
    const ElemId vau = b->id(Word{v, s0, u});
    CHECK_FALSE(gd_membership(*b, vau, c.G, c.D));
    CHECK_FALSE(phi.in_domain(vau));
  }
  CHECK(crossed == 2);
}

TEST_CASE("family JSON round trip and validation") {
  const CoxeterMatrix m = rank3(3, 4, 5);
  for (const MatchingFamily& f : enumerate_families(m, s1, 7)) {
    nlohmann::json j{{"base", "s1"}, {"family", family_to_json(m, f)}};
    CHECK(family_from_json(m, j, 7) == f);
  }
  nlohmann::json bad{{"base", "s1"}, {"family", {{"s0", {{"e", "s0"}}}, {"s2", nlohmann::json::array()}}}};
  CHECK_THROWS_AS(family_from_json(m, bad, 7), InvalidInput);
}

TEST_CASE("matching JSON") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(3), 3);
  const nlohmann::json j = matching_to_json(multiplication_matching(b, s0, Side::Right));
  CHECK(j["base"] == "s0");
  CHECK(j["domain_bound"] == 3);
  CHECK(j["pairs"].size() == 3);
  CHECK(j["pairs"][0] == nlohmann::json::parse(R"(["e","s0"])"));
  CHECK(j["excluded"].empty());
  CHECK(j["unresolved"].empty());
}

TEST_CASE("candidate maps from JSON") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(3), 3);
  const CandidateMap c = candidate_from_json(*b, nlohmann::json::parse(R"({"pairs": [["e","s0"],["s1","s1.s0"]]})"));
  CHECK(c.over.size() == 4);
  CHECK(is_special_matching(*b, c.map, c.over).ok);
  CHECK_THROWS_AS(candidate_from_json(*b, nlohmann::json::parse(R"({"pairs": [["e","s0"],["s0","s1"]]})")), InvalidInput);
}
