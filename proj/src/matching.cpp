// matching.cpp
#include "bruhat/matching.hpp"

#include <algorithm>
#include <functional>

#include "bruhat/errors.hpp"

namespace bruhat {

const DihedralMatching& MatchingFamily::member(Generator s) const {
  for (const auto& d : members)
    if (d.s == s) return d;
  throw InvalidInput("family has no member for generator " + std::to_string(s.value()));
}

PartialMatching::PartialMatching(BallPtr ball, Generator base)
    : ball_(std::move(ball)),
      base_(base),
      reliable_bound_(ball_->complete() ? ball_->bound() : ball_->bound() - 1),
      partner_(ball_->size(), kNone),
      status_(ball_->size(), Status::Unresolved) {
  if (base.value() >= ball_->rank()) throw InvalidInput("base generator out of range");
  family_.base = base;
}

bool PartialMatching::raised(ElemId x) const {
  return partner_[x] != kNone && ball_->len(partner_[x]) > ball_->len(x);
}

void PartialMatching::pair(ElemId x, ElemId y) {
  partner_[x] = y;
  partner_[y] = x;
  status_[x] = status_[y] = Status::InDomain;
}

LowerSet PartialMatching::domain() const {
  std::vector<ElemId> m;
  for (ElemId x = 0; x < partner_.size(); ++x)
    if (status_[x] == Status::InDomain) m.push_back(x);
  return LowerSet(*ball_, std::move(m));
}

std::vector<ElemId> PartialMatching::lifted() const {
  std::vector<ElemId> out;
  for (ElemId x = 0; x < partner_.size(); ++x)
    if (status_[x] == Status::InDomain && raised(x)) out.push_back(x);
  return out;
}

std::vector<ElemId> PartialMatching::excluded() const {
  std::vector<ElemId> out;
  for (ElemId x = 0; x < partner_.size(); ++x)
    if (status_[x] == Status::Excluded) out.push_back(x);
  return out;
}

std::vector<ElemId> PartialMatching::unresolved() const {
  std::vector<ElemId> out;
  for (ElemId x = 0; x < partner_.size(); ++x)
    if (status_[x] == Status::Unresolved) out.push_back(x);
  return out;
}

namespace {

bool covers(const GroupBall& b, ElemId low, ElemId high) {
  const auto& c = b.coatoms(high);
  return std::binary_search(c.begin(), c.end(), low);
}

std::vector<ElemId> z_of(const GroupBall& b, const std::vector<ElemId>& partner, ElemId u) {
  std::vector<ElemId> z{u};
  for (ElemId v : b.coatoms(u))
    if (partner[v] != kNone && b.len(partner[v]) > b.len(v)) z.push_back(partner[v]);
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  return z;
}

MatchingCheck fail(const GroupBall& b, ElemId x, int clause, const std::string& what) {
  return {false, x, clause, what + " at " + b.format(x)};
}

}  // namespace

MatchingCheck is_special_matching(const GroupBall& b, const std::vector<ElemId>& cand, const LowerSet& over) {
  if (cand.size() != b.size()) return {false, kNone, 0, "candidate map has the wrong size"};
  for (ElemId x = 0; x < b.size(); ++x)
    if (!over.contains(x) && cand[x] != kNone) return fail(b, x, 0, "candidate defined outside the domain");
  for (ElemId x : over.members()) {
    for (ElemId c : b.coatoms(x))
      if (!over.contains(c)) return fail(b, x, 0, "domain is not a lower set");
    ElemId y = cand[x];
    if (y == kNone || !over.contains(y)) return fail(b, x, 0, "image outside the domain");
    if (cand[y] != x) return fail(b, x, 1, "not an involution");
    bool up = covers(b, x, y), down = covers(b, y, x);
    if (!up && !down) return fail(b, x, 2, "image is not a cover or coatom");
    if (up) {
      std::vector<ElemId> z = z_of(b, cand, x);
      if (z != b.coatoms(y)) return fail(b, x, 3, "coat(phi(u)) differs from Z(phi,u)");
    }
  }
  return {};
}

MatchingCheck is_special_matching(const PartialMatching& phi) {
  return is_special_matching(phi.ball(), phi.partners(), phi.domain());
}

std::vector<ElemId> z_set(const PartialMatching& phi, ElemId u) {
  for (ElemId v : phi.ball().coatoms(u))
    if (!phi.in_domain(v))
      throw UnresolvedCoatom("coatom " + phi.ball().format(v) + " of " + phi.ball().format(u) +
                             " is not matched");
  return z_of(phi.ball(), phi.partners(), u);
}

// ---------------------------------------------------------------- dihedral

namespace {

std::pair<Generator, Generator> local_order(const DihedralMatching& d) {
  return d.a < d.s ? std::pair{d.a, d.s} : std::pair{d.s, d.a};
}

BallPtr local_ball(int m, int bound) {
  return GroupBall::build(CoxeterMatrix::dihedral(m), m == kInfinity ? bound : m);
}

void sort_pairs(std::vector<std::pair<Word, Word>>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const auto& p, const auto& q) {
    return Element{p.first} < Element{q.first};
  });
}

void check_dihedral_args(Generator a, Generator s, int m, int bound) {
  if (a == s) throw InvalidInput("dihedral matching needs two distinct generators");
  if (m != kInfinity && m < 2) throw InvalidInput("bond order must be >= 2 or infinity");
  if (m == kInfinity && bound < 2) throw InvalidInput("truncated dihedral matchings need bound >= 2");
}

}  // namespace

Word to_local(const DihedralMatching& d, const Word& w) {
  auto [lo, hi] = local_order(d);
  Word out;
  for (Generator g : w) {
    if (g == lo) out.emplace_back(0);
    else if (g == hi) out.emplace_back(1);
    else throw InvalidInput("word leaves the dihedral subgroup");
  }
  return out;
}

Word to_global(const DihedralMatching& d, const Word& w) {
  auto [lo, hi] = local_order(d);
  Word out;
  for (Generator g : w) out.push_back(g.index == 0 ? lo : hi);
  return out;
}

std::vector<DihedralMatching> enumerate_dihedral_matchings(Generator a, Generator s, int m, int bound) {
  check_dihedral_args(a, s, m, bound);
  DihedralMatching proto{a, s, m, m == kInfinity ? bound : m, {}};
  BallPtr ball = local_ball(m, bound);
  const GroupBall& b = *ball;
  const ElemId la = b.id(to_local(proto, Word{a}));
  std::vector<ElemId> partner(b.size(), kNone);
  std::vector<DihedralMatching> out;

  std::function<void(ElemId)> dfs = [&](ElemId w) {
    while (w < b.size() && partner[w] != kNone) ++w;
    if (w == b.size()) {
      DihedralMatching d = proto;
      for (ElemId x = 0; x < b.size(); ++x)
        if (partner[x] != kNone && b.len(partner[x]) > b.len(x))
          d.pairs.emplace_back(to_global(proto, b.word(x)), to_global(proto, b.word(partner[x])));
      sort_pairs(d.pairs);
      out.push_back(std::move(d));
      return;
    }
    if (b.len(w) == b.bound() && !b.complete()) {  // truncated top: left unmatched
      dfs(w + 1);
      return;
    }
    for (ElemId z : b.with_coatoms(z_of(b, partner, w))) {
      if (partner[z] != kNone) continue;
      partner[w] = z;
      partner[z] = w;
      dfs(w + 1);
      partner[w] = partner[z] = kNone;
    }
  };
  partner[0] = la;
  partner[la] = 0;
  dfs(1);
  return out;
}

PartialMatching dihedral_as_partial(const DihedralMatching& d) {
  check_dihedral_args(d.a, d.s, d.m, d.bound);
  BallPtr ball = local_ball(d.m, d.bound);
  PartialMatching p(ball, Generator(d.a < d.s ? 0 : 1));
  for (const auto& [x, y] : d.pairs) {
    auto ex = ball->evaluate(to_local(d, x));
    auto ey = ball->evaluate(to_local(d, y));
    if (ex && ey) p.pair(*ex, *ey);
  }
  for (ElemId x = 0; x < ball->size(); ++x) {
    if (p.in_domain(x)) continue;
    p.set_status(x, ball->len(x) >= ball->bound() && !ball->complete() ? Status::Unresolved : Status::Excluded);
  }
  return p;
}

namespace {

DihedralMatching dihedral_multiplication(Generator a, Generator s, int m, int bound, Side side) {
  check_dihedral_args(a, s, m, bound);
  DihedralMatching d{a, s, m, m == kInfinity ? bound : m, {}};
  BallPtr ball = local_ball(m, bound);
  Generator la = a < s ? Generator(0) : Generator(1);
  for (ElemId x = 0; x < ball->size(); ++x) {
    ElemId y = ball->mul(x, la, side);
    if (y != kNone && ball->len(y) > ball->len(x))
      d.pairs.emplace_back(to_global(d, ball->word(x)), to_global(d, ball->word(y)));
  }
  sort_pairs(d.pairs);
  return d;
}

std::vector<std::vector<DihedralMatching>> family_lists(const CoxeterMatrix& m, Generator a, int bound) {
  std::vector<std::vector<DihedralMatching>> lists;
  for (Generator s : m.generators())
    if (s != a) lists.push_back(enumerate_dihedral_matchings(a, s, m.m(a, s), bound));
  return lists;
}

}  // namespace

std::size_t count_families(const CoxeterMatrix& m, Generator a, int bound) {
  std::size_t n = 1;
  for (const auto& l : family_lists(m, a, bound)) n *= l.size();
  return n;
}

MatchingFamily family_at(const CoxeterMatrix& m, Generator a, int bound, std::size_t index) {
  auto lists = family_lists(m, a, bound);
  MatchingFamily f{a, {}};
  f.members.resize(lists.size());
  for (std::size_t i = lists.size(); i-- > 0;) {
    f.members[i] = lists[i][index % lists[i].size()];
    index /= lists[i].size();
  }
  return f;
}

std::vector<MatchingFamily> enumerate_families(const CoxeterMatrix& m, Generator a, int bound) {
  auto lists = family_lists(m, a, bound);
  std::vector<MatchingFamily> out;
  std::vector<std::size_t> idx(lists.size(), 0);
  if (std::any_of(lists.begin(), lists.end(), [](const auto& l) { return l.empty(); })) return out;
  while (true) {
    MatchingFamily f{a, {}};
    for (std::size_t i = 0; i < lists.size(); ++i) f.members.push_back(lists[i][idx[i]]);
    out.push_back(std::move(f));
    std::size_t i = lists.size();
    while (i > 0) {
      --i;
      if (++idx[i] < lists[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (lists.empty()) return out;
  }
}

MatchingFamily multiplication_family(const CoxeterMatrix& m, Generator a, int bound, Side side) {
  MatchingFamily f{a, {}};
  for (Generator s : m.generators())
    if (s != a) f.members.push_back(dihedral_multiplication(a, s, m.m(a, s), bound, side));
  return f;
}

// ---------------------------------------------------------------- extension

PartialMatching extend_maximal(const MatchingFamily& family, BallPtr ballp) {
  const GroupBall& b = *ballp;
  const CoxeterMatrix& mx = b.matrix();
  const Generator a = family.base;
  if (a.value() >= b.rank()) throw InvalidInput("family base out of range");
  if (family.members.size() != static_cast<std::size_t>(b.rank() - 1))
    throw InvalidInput("family must have one dihedral matching per generator other than the base");

  PartialMatching phi(ballp, a);
  for (const DihedralMatching& d : family.members) {
    const std::string who = "family member for " + mx.name(d.s);
    if (d.a != a || d.s == a || d.s.value() >= b.rank()) throw InvalidInput(who + ": wrong generators");
    if (d.m != mx.m(a, d.s)) throw InvalidInput(who + ": bond order does not match the matrix");
    if (d.m != kInfinity && d.m > b.bound())
      throw BallTooSmall(who + ": ball bound " + std::to_string(b.bound()) + " is below m = " +
                         std::to_string(d.m));
    if (d.m == kInfinity && d.bound < b.bound())
      throw InvalidInput(who + ": truncated table is shorter than the ball bound");
    PartialMatching local = dihedral_as_partial(d);
    if (local.partner(0) != local.ball().id(to_local(d, Word{a})))
      throw InvalidInput(who + ": does not send e to the base");
    MatchingCheck c = is_special_matching(local);
    if (!c.ok) throw InvalidInput(who + ": not a special matching, clause (" + std::to_string(c.clause) + ") " + c.message);
    for (const auto& [x, y] : d.pairs) {
      auto ex = b.evaluate(x), ey = b.evaluate(y);
      if (ex && ey) phi.pair(*ex, *ey);
    }
  }

  for (ElemId w = 0; w < b.size(); ++w) {
    if (phi.partner(w) != kNone) continue;
    const auto& coat = b.coatoms(w);
    if (std::any_of(coat.begin(), coat.end(), [&](ElemId v) { return phi.status(v) == Status::Excluded; })) {
      phi.set_status(w, Status::Excluded);
      continue;
    }
    if (std::any_of(coat.begin(), coat.end(), [&](ElemId v) { return phi.status(v) != Status::InDomain; })) {
      phi.set_status(w, Status::Unresolved);
      continue;
    }
    if (b.len(w) >= b.bound() && !b.complete()) {
      phi.set_status(w, Status::Unresolved);
      continue;
    }
    std::vector<ElemId> z = z_set(phi, w);
    std::vector<ElemId> cands;
    for (ElemId c : b.with_coatoms(z)) {
      if (phi.partner(c) != kNone) continue;
      // an element of a non-principal dihedral subgroup is never an image
      GeneratorSet sup = b.support(c);
      if (sup.size() <= 2 && !sup.contains(a)) continue;
      cands.push_back(c);
    }
    if (cands.size() > 1)
      throw InternalError("ambiguous candidate for " + b.format(w) + ": " + std::to_string(cands.size()) +
                          " elements share the coatom set Z of size " + std::to_string(z.size()));
    if (cands.empty()) phi.set_status(w, Status::Excluded);
    else phi.pair(w, cands.front());
  }
  phi.set_family(family);
  return phi;
}

MatchingFamily restrict_to_principal(const PartialMatching& phi) {
  const GroupBall& b = phi.ball();
  const Generator a = phi.base();
  MatchingFamily f{a, {}};
  for (Generator s : b.matrix().generators()) {
    if (s == a) continue;
    int m = b.matrix().m(a, s);
    DihedralMatching d{a, s, m, m == kInfinity ? b.bound() : m, {}};
    GeneratorSet P;
    P.insert(a);
    P.insert(s);
    for (ElemId x = 0; x < b.size(); ++x) {
      if (!phi.raised(x) || !b.support(x).subset_of(P)) continue;
      ElemId y = phi.partner(x);
      if (b.support(y).subset_of(P)) d.pairs.emplace_back(b.word(x), b.word(y));
    }
    sort_pairs(d.pairs);
    f.members.push_back(std::move(d));
  }
  return f;
}

PartialMatching multiplication_matching(BallPtr ball, Generator a, Side side) {
  PartialMatching phi(ball, a);
  for (ElemId x = 0; x < ball->size(); ++x) {
    ElemId y = ball->mul(x, a, side);
    if (y != kNone) phi.pair(x, y);
  }
  phi.set_family(multiplication_family(ball->matrix(), a, ball->bound(), side));
  return phi;
}

PartialMatching mirror(const PartialMatching& phi) {
  const GroupBall& b = phi.ball();
  PartialMatching out(phi.ball_ptr(), phi.base());
  for (ElemId x = 0; x < b.size(); ++x) {
    ElemId ix = b.inverse(x);
    out.set_status(x, phi.status(ix));
  }
  for (ElemId x = 0; x < b.size(); ++x) {
    ElemId p = phi.partner(b.inverse(x));
    if (p != kNone) out.pair(x, b.inverse(p));
  }
  out.set_reliable_bound(phi.reliable_bound());
  out.set_family(restrict_to_principal(out));
  return out;
}

// ---------------------------------------------------------------- regularity

namespace {

bool regular_over(const PartialMatching& phi, Generator s, Side side,
                  const std::function<bool(ElemId)>& keep) {
  const GroupBall& b = phi.ball();
  const int rb = phi.reliable_bound();
  for (ElemId x = 0; x < b.size() && b.len(x) <= rb; ++x) {
    if (!phi.in_domain(x) || !keep(x)) continue;
    ElemId y = b.mul(x, s, side);
    if (y == kNone || b.len(y) > rb) continue;
    if (!phi.in_domain(y)) return false;
    if (phi.partner(y) != b.mul(phi.partner(x), s, side)) return false;
  }
  return true;
}

}  // namespace

bool is_regular(const PartialMatching& phi, Generator s, Side side) {
  return regular_over(phi, s, side, [](ElemId) { return true; });
}

bool is_regular_on_principal(const PartialMatching& phi, Generator t, Generator s, Side side) {
  GeneratorSet P;
  P.insert(phi.base());
  P.insert(t);
  const GroupBall& b = phi.ball();
  return regular_over(phi, s, side, [&](ElemId x) { return b.support(x).subset_of(P); });
}

bool is_regular(const DihedralMatching& d, Generator x, Side side) {
  if (x != d.a && x != d.s) throw InvalidInput("generator is not in the dihedral subgroup");
  PartialMatching p = dihedral_as_partial(d);
  return is_regular(p, to_local(d, Word{x}).front(), side);
}

bool regularity_criterion_dihedral(const DihedralMatching& d, Generator x) {
  if (x != d.a && x != d.s) throw InvalidInput("generator is not in the dihedral subgroup");
  PartialMatching p = dihedral_as_partial(d);
  const GroupBall& b = p.ball();
  const Generator lx = to_local(d, Word{x}).front();
  const Generator ly(1 - lx.value());
  auto el = [&](Generator first, int n) { return b.evaluate(alternating(first, first == lx ? ly : lx, n, AltForm::Prefix)); };
  for (int j = 0;; ++j) {
    if (d.m != kInfinity && j > d.m - 3) break;
    if (d.m == kInfinity && j + 1 > p.reliable_bound()) break;
    auto yj = el(ly, j), yj1 = el(ly, j + 1), xyj = el(lx, j + 1), xyj1 = el(lx, j + 2);
    if (!yj || !yj1 || !xyj || !xyj1) break;
    if (p.partner(*yj) == *yj1 && p.partner(*xyj) != *xyj1) return false;
  }
  return true;
}

bool principal_is_multiplication(const PartialMatching& phi, Generator t, Side side) {
  const GroupBall& b = phi.ball();
  GeneratorSet P;
  P.insert(phi.base());
  P.insert(t);
  for (ElemId x = 0; x < b.size() && b.len(x) <= phi.reliable_bound(); ++x) {
    if (!b.support(x).subset_of(P)) continue;
    if (!phi.in_domain(x) || phi.partner(x) != b.mul(x, phi.base(), side)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- orbits

std::vector<Orbit> orbits(const PartialMatching& phi) {
  std::vector<Orbit> out;
  for (ElemId x : phi.lifted()) out.push_back({x, phi.partner(x)});
  return out;
}

ReducibilityReport is_reducible(const PartialMatching& phi) {
  const GroupBall& b = phi.ball();
  ReducibilityReport rep;
  if (b.rank() <= 2) return rep;
  for (Generator s : b.matrix().generators())
    for (Generator t : b.matrix().generators())
      if (s < t) b.longest_dihedral(s, t);  // throws when the ball is too small
  std::vector<bool> lreg, rreg;
  for (Generator s : b.matrix().generators()) {
    lreg.push_back(is_regular(phi, s, Side::Left));
    rreg.push_back(is_regular(phi, s, Side::Right));
  }
  const GeneratorSet all = GeneratorSet::all(b.rank());
  for (const Orbit& o : orbits(phi)) {
    if (!is_full(b, o.high, all)) continue;
    OrbitWitness w{o, std::nullopt};
    for (Generator s : b.descents(o.low, Side::Left).members())
      if (lreg[s.index]) {
        w.witness = std::pair{s, Side::Left};
        break;
      }
    if (!w.witness)
      for (Generator s : b.descents(o.low, Side::Right).members())
        if (rreg[s.index]) {
          w.witness = std::pair{s, Side::Right};
          break;
        }
    if (!w.witness) rep.reducible = false;
    rep.full_orbits.push_back(w);
  }
  return rep;
}

std::vector<ElemId> full_elements(const PartialMatching& phi) {
  const GroupBall& b = phi.ball();
  const GeneratorSet all = GeneratorSet::all(b.rank());
  std::vector<ElemId> out;
  for (ElemId x = 0; x < b.size(); ++x)
    if (phi.in_domain(x) && is_full(b, x, all)) out.push_back(x);
  return out;
}

bool is_full_matching(const PartialMatching& phi) { return !full_elements(phi).empty(); }

CrossClassification classify_cross(const PartialMatching& phi) {
  const GroupBall& b = phi.ball();
  const Generator a = phi.base();
  CrossClassification c;
  for (Generator s : b.matrix().generators()) {
    ElemId img = phi.partner(b.id(Word{s}));
    if (img == b.mul(b.id(Word{s}), a, Side::Right)) c.G.insert(s);
    if (img == b.mul(b.id(Word{s}), a, Side::Left)) c.D.insert(s);
    if (s == a || b.matrix().m(a, s) == 2) {
      c.C.insert(s);
      continue;
    }
    if (img == b.mul(b.id(Word{s}), a, Side::Right)) c.U.insert(s);
    else if (img == b.mul(b.id(Word{s}), a, Side::Left)) c.V.insert(s);
  }
  c.crossed = !c.U.empty() && !c.V.empty();
  c.right_type = c.V.empty();
  c.left_type = c.U.empty();
  if (!c.crossed) {
    Side side = c.right_type ? Side::Right : Side::Left;
    for (Generator s : b.matrix().generators())
      if (!c.C.contains(s) && !principal_is_multiplication(phi, s, side)) {
        c.b = s;
        break;
      }
  }
  for (Generator s : c.C.members()) {
    int mbc = c.b ? b.matrix().m(*c.b, s) : 2;
    if (c.b && (mbc == kInfinity || mbc >= 3)) c.C1.insert(s);
    else c.C2.insert(s);
  }
  return c;
}

bool gd_membership(const GroupBall& b, ElemId w, GeneratorSet G, GeneratorSet D) {
  std::vector<bool> seen(b.size(), false);
  std::vector<ElemId> stack{w};
  seen[w] = true;
  while (!stack.empty()) {
    ElemId y = stack.back();
    stack.pop_back();
    if (b.support(y).subset_of(D)) return true;
    for (Generator s : (b.descents(y, Side::Left) & G).members()) {
      ElemId sy = b.mul(y, s, Side::Left);
      if (!seen[sy]) {
        seen[sy] = true;
        stack.push_back(sy);
      }
    }
  }
  return false;
}

FactorizationCheck check_product_formula(const PartialMatching& phi, GeneratorSet X, GeneratorSet Y, Side side) {
  const GroupBall& b = phi.ball();
  const int rb = phi.reliable_bound();
  auto bad = [&](ElemId x, std::string what) { return FactorizationCheck{false, x, b.format(x) + ": " + what}; };
  std::vector<ElemId> seen(b.size(), kNone);
  for (ElemId y = 0; y < b.size() && b.len(y) <= rb; ++y) {
    if (!phi.in_domain(y) || !b.support(y).subset_of(Y)) continue;
    std::vector<std::pair<ElemId, ElemId>> stack{{y, phi.partner(y)}};
    seen[y] = y;
    while (!stack.empty()) {
      auto [w, p] = stack.back();
      stack.pop_back();
      for (Generator s : X.members()) {
        ElemId w2 = b.mul(w, s, side);
        if (w2 == kNone || b.len(w2) > rb || seen[w2] == y) continue;
        seen[w2] = y;
        if (!phi.in_domain(w2)) return bad(w2, "product lies outside Q");
        ElemId p2 = b.mul(p, s, side);
        if (p2 == kNone) continue;
        if (phi.partner(w2) != p2) return bad(w2, "φ does not commute with the parabolic factor");
        stack.push_back({w2, p2});
      }
    }
  }
  return {};
}

FactorizationCheck check_factorization(const PartialMatching& phi, GeneratorSet X, GeneratorSet Y, Side side) {
  const GroupBall& b = phi.ball();
  for (ElemId w = 0; w < b.size() && b.len(w) <= phi.reliable_bound(); ++w) {
    if (!phi.in_domain(w)) continue;
    ElemId probe = side == Side::Left ? w : b.inverse(w);
    if (!gd_membership(b, probe, X, Y))
      return {false, w, b.format(w) + ": not in the product of the parabolic factors"};
  }
  return check_product_formula(phi, X, Y, side);
}

}  // namespace bruhat
