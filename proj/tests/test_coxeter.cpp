#include <doctest.h>

#include <algorithm>
#include <set>

#include "bruhat/errors.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace th;

TEST_CASE("reduce: involution, braid tie-break, deletion") {
  const CoxeterMatrix m = CoxeterMatrix::dihedral(3);
  CHECK(reduce(m, m.parse("s0.s0")).len() == 0);
  CHECK(canon(m, "s1.s0.s1") == "s0.s1.s0");
  CHECK(canon(m, "s0.s1.s0.s1") == "s1.s0");
  CHECK(canon(m, "e") == "e");
}

TEST_CASE("reduce is idempotent and respects length parity") {
  for (const CoxeterMatrix& m : {rank3(3, 3, 3), rank3(2, 4, 5), rank3(3, 2, 0)}) {
    BallPtr b = GroupBall::build(m, 6);
    for (ElemId x = 0; x < b->size(); ++x) CHECK(reduce(m, b->word(x)).canonical == b->word(x));
  }
}

TEST_CASE("reduce: a long word runs out of budget") {
  const CoxeterMatrix m = path(3, {5, 3});
  Word w;
  for (int i = 0; i < 30; ++i) w.push_back(Generator(i % 3));
  CHECK_THROWS_AS(reduce(m, w, 50), BudgetExceeded);
  CHECK(reduce(m, w).len() <= 15);
}

TEST_CASE("multiply") {
  const CoxeterMatrix m3 = CoxeterMatrix::dihedral(3), m4 = CoxeterMatrix::dihedral(4);
  CHECK(multiply(m3, Element{}, s0, Side::Left).canonical == Word{s0});
  CHECK(m3.format(multiply(m3, reduce(m3, m3.parse("s0.s1")), s0, Side::Left).canonical) == "s1");
  const Element x = multiply(m4, reduce(m4, m4.parse("s0.s1.s0")), s1, Side::Right);
  CHECK(x.len() == 4);
  CHECK(x == dihedral_word(m4, s0, s1, 4, AltForm::Prefix));
}

TEST_CASE("descents") {
  const CoxeterMatrix m = CoxeterMatrix::dihedral(3);
  BallPtr b = GroupBall::build(m, 3);
  CHECK(b->descents(b->identity(), Side::Left).empty());
  CHECK(b->descents(b->parse("s0.s1.s0"), Side::Left).size() == 2);
  CHECK(b->descents(b->parse("s0.s1.s0"), Side::Right).size() == 2);
  const ElemId st = b->parse("s0.s1");
  CHECK(b->descents(st, Side::Left).members() == std::vector<Generator>{s0});
  CHECK(b->descents(st, Side::Right).members() == std::vector<Generator>{s1});
}

TEST_CASE("exchange coherence") {
  BallPtr b = GroupBall::build(rank3(3, 4, 5), 6);
  for (ElemId x = 0; x < b->size(); ++x)
    for (Side side : {Side::Left, Side::Right})
      for (Generator s : b->matrix().generators()) {
        const ElemId y = b->mul(x, s, side);
        if (y == kNone) continue;
        CHECK(b->descents(x, side).contains(s) == (b->len(y) == b->len(x) - 1));
      }
}

TEST_CASE("bruhat order examples") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(3), 3);
  for (ElemId y = 0; y < b->size(); ++y) CHECK(b->leq(b->identity(), y));
  CHECK_FALSE(b->leq(b->parse("s0"), b->parse("s1")));
  CHECK(b->leq(b->parse("s0"), b->parse("s1.s0")));
}

TEST_CASE("bruhat order agrees with the subword property") {
  for (const CoxeterMatrix& m :
       {CoxeterMatrix::dihedral(5), CoxeterMatrix::dihedral(0), rank3(3, 3, 3), rank3(2, 3, 5), rank3(4, 4, 0)}) {
    BallPtr b = GroupBall::build(m, m.rank() == 2 ? 8 : 6);
    for (ElemId y = 0; y < b->size(); ++y) {
      const std::set<ElemId> lower = oracle::subword_lower(*b, y);
      for (ElemId x = 0; x < b->size(); ++x) {
        CHECK(b->leq(x, y) == (lower.count(x) == 1));
        CHECK(b->leq(x, y) == b->leq_recursive(x, y));
      }
    }
  }
}

TEST_CASE("coatoms") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(3), 3);
  CHECK(b->coatoms(b->parse("s0")) == std::vector<ElemId>{b->identity()});
  std::vector<std::string> c = fmt(*b, b->coatoms(b->parse("s0.s1.s0")));
  std::sort(c.begin(), c.end());
  CHECK(c == std::vector<std::string>{"s0.s1", "s1.s0"});
}

TEST_CASE("coatom counts separate dihedral elements and determine elements") {
  for (const CoxeterMatrix& m : {rank3(3, 3, 3), rank3(2, 4, 5), path(4, {3, 3, 3})}) {
    BallPtr b = GroupBall::build(m, 6);
    std::set<std::vector<ElemId>> seen;
    for (ElemId w = 0; w < b->size(); ++w) {
      const auto& c = b->coatoms(w);
      CHECK((c.size() <= 2) == b->is_dihedral(w));
      for (ElemId x : c) CHECK(b->len(x) == b->len(w) - 1);
      if (c.size() >= 3) {
        std::vector<ElemId> k = c;
        std::sort(k.begin(), k.end());
        CHECK(seen.insert(k).second);
      }
    }
  }
}

TEST_CASE("alternating words") {
  const CoxeterMatrix m = CoxeterMatrix::dihedral(4);
  CHECK(dihedral_word(m, s0, s1, 0, AltForm::Prefix).len() == 0);
  CHECK(m.format(dihedral_word(m, s0, s1, 3, AltForm::Prefix).canonical) == "s0.s1.s0");
  CHECK(dihedral_word(m, s0, s1, 4, AltForm::Prefix) == dihedral_word(m, s0, s1, 4, AltForm::Suffix));
  CHECK_THROWS_AS(dihedral_word(m, s0, s1, 5, AltForm::Prefix), InvalidInput);
}

TEST_CASE("full elements") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(3), 3);
  const GeneratorSet S = GeneratorSet::all(2);
  CHECK(is_full(*b, b->parse("s0.s1.s0"), S));
  CHECK_FALSE(is_full(*b, b->identity(), S));
  BallPtr inf = GroupBall::build(rank3(3, 0, 3), 6);
  for (ElemId w = 0; w < inf->size(); ++w) CHECK_FALSE(is_full(*inf, w, GeneratorSet::all(3)));
}

TEST_CASE("parabolic max and support") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(4), 4);
  const ElemId aba = b->parse("s0.s1.s0");
  CHECK(parabolic_max(*b, aba, GeneratorSet{}) == b->identity());
  CHECK(parabolic_max(*b, aba, GeneratorSet::all(2)) == aba);
  BallPtr r3 = GroupBall::build(rank3(3, 3, 3), 4);
  CHECK(r3->support(r3->identity()).empty());
  CHECK(r3->support(r3->parse("s0.s2.s0")).size() == 2);
  CHECK(r3->support(r3->parse("s0.s2.s1.s2")).size() == 3);
}

TEST_CASE("flatten [e,aba] in m=4 onto the m=3 group") {
  BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(4), 4);
  FlattenResult f = flatten(*b, b->parse("s0.s1.s0"));
  CHECK(f.matrix.m(s0, s1) == 3);
  CHECK(f.ball->len(f.image) == 3);
  CHECK(f.map.size() == 6);
  for (const auto& [u, pu] : f.map) CHECK(b->len(u) == f.ball->len(pu));
  for (const auto& [u, pu] : f.map)
    for (const auto& [v, pv] : f.map) CHECK(b->leq(u, v) == f.ball->leq(pu, pv));
}

TEST_CASE("flatten of a full element changes nothing") {
  BallPtr b = GroupBall::build(rank3(3, 3, 3), 6);
  for (ElemId w = 0; w < b->size(); ++w) {
    if (!is_full(*b, w, GeneratorSet::all(3))) continue;
    FlattenResult f = flatten(*b, w);
    CHECK(f.matrix == b->matrix());
    for (const auto& [u, pu] : f.map) CHECK(b->word(u) == f.ball->word(pu));
  }
}

TEST_CASE("ball sizes per length") {
  CHECK(GroupBall::build(CoxeterMatrix::dihedral(3), 3)->level_sizes() == std::vector<std::size_t>{1, 2, 2, 1});
  CHECK(GroupBall::build(CoxeterMatrix::from_rows({{1}}), 3)->level_sizes() == std::vector<std::size_t>{1, 1});
  CHECK(GroupBall::build(CoxeterMatrix::dihedral(0), 4)->level_sizes() == std::vector<std::size_t>{1, 2, 2, 2, 2});
  BallPtr a3 = GroupBall::build(path(3, {3, 3}), 8);
  CHECK(a3->complete());
  CHECK(a3->size() == 24);
  BallPtr h3 = GroupBall::build(path(3, {5, 3}), 15);
  CHECK(h3->size() == 120);
}

TEST_CASE("matrix JSON and validation") {
  const nlohmann::json j = {{"rank", 3}, {"m", {{1, 3, 0}, {3, 1, 2}, {0, 2, 1}}}, {"names", {"a", "b", "c"}}};
  const CoxeterMatrix m = CoxeterMatrix::from_json(j);
  CHECK_FALSE(m.finite(m.generator("a"), m.generator("c")));
  CHECK(CoxeterMatrix::from_json(m.to_json()) == m);
  CHECK(m.format(m.parse("a.b.a")) == "a.b.a");
  CHECK_THROWS_AS(m.parse("a.x"), InvalidInput);
  CHECK_THROWS_AS(CoxeterMatrix::from_rows({{1, 3}, {2, 1}}), InvalidInput);
  CHECK_THROWS_AS(CoxeterMatrix::from_rows({{1, 1}, {1, 1}}), InvalidInput);
  CHECK_THROWS_AS(CoxeterMatrix::from_rows({{1, 3}, {3, 1}}, {"a.b", "c"}), InvalidInput);
  CHECK_THROWS_AS(CoxeterMatrix::from_rows({{1, 3}, {3, 1}}, {"a", "a"}), InvalidInput);
}

TEST_CASE("relabeled matrices give the same ball shape") {
  const CoxeterMatrix m = rank3(2, 3, 5);
  const CoxeterMatrix p = m.permuted({2, 0, 1});
  CHECK(p.m(s0, s1) == m.m(s2, s0));
  CHECK(GroupBall::build(m, 7)->level_sizes() == GroupBall::build(p, 7)->level_sizes());
  CHECK(m.hash() == CoxeterMatrix::from_rows({{1, 2, 3}, {2, 1, 5}, {3, 5, 1}}).hash());
}
