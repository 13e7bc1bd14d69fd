// rank3.cpp
#include "bruhat/rank3.hpp"

#include <algorithm>

#include "bruhat/errors.hpp"

namespace bruhat {

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::I2: return "I2";
    case Scenario::I3: return "I3";
    case Scenario::II1: return "II1";
    case Scenario::II2: return "II2";
    case Scenario::II3: return "II3";
    case Scenario::II5: return "II5";
    case Scenario::III1_1: return "III1_1";
    case Scenario::III1_2: return "III1_2";
    case Scenario::IV2: return "IV2";
    case Scenario::IV3: return "IV3";
    case Scenario::IV4: return "IV4";
  }
  return "?";
}

namespace {

bool at_least(int m, int k) { return m == kInfinity || m >= k; }

Word cat(Word x, const Word& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

// [s,t,n⟩ and ⟨n,t,s]
Word pre(Generator s, Generator t, int n) { return alternating(s, t, n, AltForm::Prefix); }
Word suf(int n, Generator t, Generator s) { return alternating(s, t, n, AltForm::Suffix); }

struct Bonds {
  int ab, abp, bbp;
};

Bonds bonds(const CoxeterMatrix& m, const Roles& r) {
  return {m.m(r.a, r.b), m.m(r.a, r.bp), m.m(r.b, r.bp)};
}

std::vector<ElemId> h_set(const GroupBall& ball, const Roles& r, int t, bool both_sides) {
  if (t + 1 > ball.bound()) throw BallTooSmall("H-set lies beyond the ball bound");
  const ElemId T = ball.id(suf(t, r.a, r.b));
  const ElemId bp = ball.id(Word{r.bp});
  const ElemId bpT = ball.id(cat(Word{r.bp}, suf(t, r.a, r.b)));
  const ElemId Tbp = ball.id(cat(suf(t, r.a, r.b), Word{r.bp}));
  std::vector<ElemId> out;
  for (ElemId w : ball.level(t + 1)) {
    if (!ball.leq(bp, w) || !ball.leq(T, w) || w == bpT) continue;
    if (both_sides && w == Tbp) continue;
    out.push_back(w);
  }
  return out;
}

void require(bool ok, const ScenarioConfig& c, const char* what) {
  if (!ok) throw ScenarioNotCovered("scenario " + scenario_name(c.kind) + ": " + what);
}

}  // namespace

Word gamma_word(const CoxeterMatrix& m, const Roles& r) {
  Bonds k = bonds(m, r);
  if (k.ab == kInfinity || k.abp == kInfinity) throw InvalidInput("Γ needs finite bonds");
  return cat(suf(k.abp - 1, r.a, r.bp), pre(r.b, r.a, k.ab - 1));
}

Word gamma_prime_word(const CoxeterMatrix& m, const Roles& r) {
  Bonds k = bonds(m, r);
  if (k.ab == kInfinity || k.abp == kInfinity) throw InvalidInput("Γ′ needs finite bonds");
  return cat(cat(suf(k.abp - 1, r.a, r.bp), Word{r.a}), pre(r.b, r.a, k.ab - 1));
}

std::vector<ElemId> predict_obstructions(const GroupBall& ball, const ScenarioConfig& c) {
  if (ball.rank() != 3) throw ScenarioNotCovered("obstruction scenarios are stated for rank 3");
  const Roles& r = c.roles;
  const Bonds k = bonds(ball.matrix(), r);
  const Generator a = r.a, b = r.b, bp = r.bp;
  auto fits_t = [&](int slack) { return c.t >= 0 && (k.ab == kInfinity || c.t <= k.ab - slack); };
  switch (c.kind) {
    case Scenario::I2:
    case Scenario::II1:
      require(at_least(k.abp, 3), c, "needs m_ab' >= 3");
      require(fits_t(3), c, "needs 0 <= t <= m_ab - 3");
      return {ball.id(cat(Word{a, bp}, pre(b, a, c.t)))};
    case Scenario::I3:
      require(at_least(k.bbp, 3), c, "needs m_bb' >= 3");
      // the argument needs |coat([a,b,t⟩)| = 2; at t = 0, bb' can lie in Q
      require(c.t >= 2 && fits_t(3), c, "needs 2 <= t <= m_ab - 3");
      return {ball.id(cat(Word{b, bp}, pre(a, b, c.t)))};
    case Scenario::II2:
      require(at_least(k.abp, 4), c, "needs m_ab' >= 4");
      require(fits_t(2), c, "needs 0 <= t <= m_ab - 2");
      return {ball.id(cat(Word{a, bp}, pre(b, a, c.t)))};
    case Scenario::II3:
      require(at_least(k.abp, 5), c, "needs m_ab' >= 5");
      return {ball.id(Word{a, bp, b, a})};
    case Scenario::II5:
      require(at_least(k.ab, 3) && at_least(k.abp, 3), c, "needs m_ab, m_ab' >= 3");
      require(fits_t(2) && c.t2 >= 0 && (k.abp == kInfinity || c.t2 <= k.abp - 2), c,
              "needs deviation indices within the dihedral groups");
      return {ball.id(cat(suf(c.t2, a, bp), pre(b, a, c.t)))};
    case Scenario::III1_1:
      require(at_least(k.ab, 3) && at_least(k.abp, 3), c, "needs m_ab, m_ab' >= 3");
      require(fits_t(2), c, "needs 0 <= t <= m_ab - 2");
      return h_set(ball, r, c.t, false);
    case Scenario::III1_2:
      require(at_least(k.ab, 3) && at_least(k.abp, 3), c, "needs m_ab, m_ab' >= 3");
      return {ball.id(Word{a, b, bp}), ball.id(Word{a, bp, b})};
    case Scenario::IV2:
      require(k.abp == 2 && at_least(k.bbp, 3), c, "needs m_ab' = 2, m_bb' >= 3");
      require(c.t >= 2 && fits_t(2), c, "needs 2 <= t <= m_ab - 2");
      return h_set(ball, r, c.t, true);
    case Scenario::IV3:
      require(k.abp == 2 && at_least(k.bbp, 4) && at_least(k.ab, 4), c,
              "needs m_ab' = 2, m_bb' >= 4, m_ab >= 4");
      return {ball.id(Word{a, b, bp, b})};
    case Scenario::IV4:
      require(k.abp == 2 && k.bbp == 3 && at_least(k.ab, 4), c, "needs m_ab' = 2, m_bb' = 3, m_ab >= 4");
      return {ball.id(Word{a, b, bp, a, b})};
  }
  throw ScenarioNotCovered("unknown scenario");
}

namespace {

class Detector {
 public:
  Detector(const PartialMatching& phi, Roles r)
      : phi_(phi), b_(phi.ball()), r_(r), k_(bonds(b_.matrix(), r)) {}

  // φ(x) = y with x resolved in the domain.
  bool maps(const Word& x, const Word& y) const {
    auto ex = b_.evaluate(x), ey = b_.evaluate(y);
    return ex && ey && phi_.in_domain(*ex) && phi_.partner(*ex) == *ey;
  }

  bool resolved(const Word& w) const {
    auto e = b_.evaluate(w);
    return e && b_.len(*e) <= phi_.reliable_bound() && static_cast<int>(w.size()) == b_.len(*e);
  }

  // x-left-regularity scan on ⟨x,y⟩: first j with
  // φ(Y_j) = Y_{j+1} and φ(xY_j) ≠ xY_{j+1}, Y_j = [y,x,j⟩.
  int irregular_index(Generator x, Generator y, int mxy) const {
    for (int j = 0; mxy == kInfinity || j <= mxy - 3; ++j) {
      Word xyj = pre(x, y, j + 1);
      if (!resolved(xyj) || !resolved(pre(x, y, j + 2)) || !resolved(pre(y, x, j + 1))) return -1;
      if (maps(pre(y, x, j), pre(y, x, j + 1)) && !maps(xyj, pre(x, y, j + 2))) return j;
    }
    return -1;
  }

  // First t with φ([s,a,t⟩) = [s,a,t+1⟩ (deviation from x ↦ ax on ⟨a,s⟩).
  int left_deviation(Generator s, int mas) const {
    for (int t = 0; mas == kInfinity || t <= mas - 2; ++t) {
      if (!resolved(pre(s, r_.a, t))) return -1;
      if (maps(pre(s, r_.a, t), pre(s, r_.a, t + 1))) return t;
    }
    return -1;
  }

  // First t with φ(⟨t,a,s]) ≠ ⟨t,a,s]a, required to equal ⟨t+1,a,s].
  int right_deviation(Generator s, int mas) const {
    for (int t = 0; mas == kInfinity || t <= mas - 2; ++t) {
      Word T = suf(t, r_.a, s);
      if (!resolved(T)) return -1;
      if (!maps(T, cat(T, Word{r_.a}))) return maps(T, suf(t + 1, r_.a, s)) ? t : -1;
    }
    return -1;
  }

  std::vector<ScenarioConfig> detect() const {
    const Generator a = r_.a, b = r_.b, bp = r_.bp;
    std::vector<ScenarioConfig> out;
    auto add = [&](Scenario s, int t = -1, int t2 = -1) { out.push_back({s, r_, t, t2}); };
    const bool nondeg = at_least(k_.ab, 3) && at_least(k_.abp, 3);
    const bool crossed = nondeg && maps({b}, {a, b}) && maps({bp}, {bp, a});
    const bool straight = nondeg && maps({b}, {b, a}) && maps({bp}, {bp, a});
    const bool beta_a_left_reg = is_regular_on_principal(phi_, b, a, Side::Left);

    if (at_least(k_.abp, 3) && maps({bp}, {bp, a}) && maps({a, bp}, {a, bp, a}) && !beta_a_left_reg) {
      int t = irregular_index(a, b, k_.ab);
      if (t >= 0) add(Scenario::I2, t);
    }
    if (at_least(k_.bbp, 3) && maps({bp}, {bp, a}) && !is_regular_on_principal(phi_, b, b, Side::Left)) {
      int t = irregular_index(b, a, k_.ab);
      if (t >= 2) add(Scenario::I3, t);
    }
    if (crossed) {
      if (maps({a, bp}, {a, bp, a}) && !beta_a_left_reg) {
        int t = irregular_index(a, b, k_.ab);
        if (t >= 0) add(Scenario::II1, t);
      }
      if (at_least(k_.abp, 4) && maps({a, bp}, {bp, a, bp}) && maps({a, bp, a}, {bp, a, bp, a}) &&
          !principal_is_multiplication(phi_, b, Side::Left)) {
        int t = left_deviation(b, k_.ab);
        if (t >= 0) add(Scenario::II2, t);
      }
      if (at_least(k_.abp, 5) && maps({a, bp}, {bp, a, bp}) && maps({a, bp, a}, {a, bp, a, bp}))
        add(Scenario::II3);
      if (beta_a_left_reg && is_regular_on_principal(phi_, bp, a, Side::Right) &&
          !principal_is_multiplication(phi_, b, Side::Left) &&
          !principal_is_multiplication(phi_, bp, Side::Right)) {
        int t = left_deviation(b, k_.ab), t2 = right_deviation(bp, k_.abp);
        if (t >= 0 && t2 >= 0) add(Scenario::II5, t, t2);
      }
    }
    if (straight && !principal_is_multiplication(phi_, b, Side::Right)) {
      int t = right_deviation(b, k_.ab);
      if (t >= 0) add(maps({a, bp}, {a, bp, a}) ? Scenario::III1_1 : Scenario::III1_2, t);
    }
    if (k_.abp == 2) {
      if (at_least(k_.bbp, 3) && maps({b}, {b, a}) && !principal_is_multiplication(phi_, b, Side::Right)) {
        int t = right_deviation(b, k_.ab);
        if (t >= 2) add(Scenario::IV2, t);
      }
      if (at_least(k_.bbp, 4) && at_least(k_.ab, 4) && maps({a, b}, {b, a, b})) add(Scenario::IV3);
      if (k_.bbp == 3 && at_least(k_.ab, 4) && maps({a, b}, {b, a, b})) add(Scenario::IV4);
    }
    return out;
  }

 private:
  const PartialMatching& phi_;
  const GroupBall& b_;
  Roles r_;
  Bonds k_;
};

}  // namespace

std::vector<ScenarioInstance> detect_scenarios(const PartialMatching& phi) {
  const GroupBall& ball = phi.ball();
  if (ball.rank() != 3) return {};
  std::vector<ScenarioInstance> out;
  const Generator a = phi.base();
  std::vector<Generator> others;
  for (Generator s : ball.matrix().generators())
    if (s != a) others.push_back(s);
  const PartialMatching mir = mirror(phi);
  for (bool mirrored : {false, true}) {
    const PartialMatching& psi = mirrored ? mir : phi;
    for (int swap = 0; swap < 2; ++swap) {
      Roles r{a, others[swap], others[1 - swap]};
      for (const ScenarioConfig& c : Detector(psi, r).detect()) {
        ScenarioInstance inst{c, mirrored, true, c.kind != Scenario::III1_1 && c.kind != Scenario::III1_2 &&
                                                   c.kind != Scenario::IV2, {}};
        try {
          for (ElemId x : predict_obstructions(ball, c))
            inst.predicted.push_back(mirrored ? ball.inverse(x) : x);
        } catch (const BallTooSmall&) {
          inst.in_range = false;
          inst.predicted.clear();
        }
        for (ElemId x : inst.predicted)
          if (ball.len(x) > phi.reliable_bound()) inst.in_range = false;
        out.push_back(std::move(inst));
      }
    }
  }
  return out;
}

}  // namespace bruhat
