// verify.cpp
#include "bruhat/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "bruhat/errors.hpp"
#include "bruhat/group_ball.hpp"
#include "bruhat/kl.hpp"
#include "bruhat/matching.hpp"
#include "bruhat/poset.hpp"
#include "bruhat/rank3.hpp"
#include "bruhat/serialize.hpp"

namespace bruhat {

using nlohmann::json;

// ---------------------------------------------------------------- corpus

int default_bound(const CoxeterMatrix& m) {
  bool inf = false;
  for (Generator s : m.generators())
    for (Generator t : m.generators())
      if (s != t && !m.finite(s, t)) inf = true;
  return inf ? 6 : std::min(12, m.max_finite_bond() + 2);
}

namespace {

std::string bond(int m) { return m == kInfinity ? "inf" : std::to_string(m); }

CoxeterMatrix rank3_matrix(int x, int y, int z) {
  return CoxeterMatrix::from_rows({{1, x, y}, {x, 1, z}, {y, z, 1}});
}

CoxeterMatrix path(int rank, const std::vector<int>& bonds) {
  std::vector<std::vector<int>> rows(rank, std::vector<int>(rank, 2));
  for (int i = 0; i < rank; ++i) rows[i][i] = 1;
  for (int i = 0; i + 1 < rank; ++i) rows[i][i + 1] = rows[i + 1][i] = bonds[i];
  return CoxeterMatrix::from_rows(rows);
}

void add(Corpus& c, std::string label, CoxeterMatrix m, int bound = 0) {
  if (bound == 0) bound = default_bound(m);
  c.cases.push_back({std::move(label), std::move(m), bound});
}

// Bond multisets {x ≤ y ≤ z}.
template <class F>
void rank3_multisets(const std::vector<int>& values, F f) {
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i; j < values.size(); ++j)
      for (std::size_t k = j; k < values.size(); ++k) f(values[i], values[j], values[k]);
}

std::string rank3_label(int x, int y, int z) { return "rank3(" + bond(x) + "," + bond(y) + "," + bond(z) + ")"; }

}  // namespace

Corpus Corpus::standard() {
  Corpus c;
  for (int m : {2, 3, 4, 5, 6, kInfinity}) add(c, "I2(" + bond(m) + ")", CoxeterMatrix::dihedral(m));
  rank3_multisets({2, 3, 4, 5}, [&](int x, int y, int z) { add(c, rank3_label(x, y, z), rank3_matrix(x, y, z)); });
  for (int y : {2, 3, 4, 5})
    for (int z : {2, 3, 4, 5})
      if (y <= z) add(c, rank3_label(y, z, kInfinity), rank3_matrix(y, z, kInfinity));
  add(c, "A4", path(4, {3, 3, 3}));
  return c;
}

Corpus Corpus::rank3() {
  Corpus c;
  rank3_multisets({2, 3, 4, 5}, [&](int x, int y, int z) {
    CoxeterMatrix m = rank3_matrix(x, y, z);
    add(c, rank3_label(x, y, z), m, std::min(12, 2 * m.max_finite_bond() + 1));
  });
  for (int y : {2, 3, 4, 5})
    for (int z : {2, 3, 4, 5})
      if (y <= z) add(c, rank3_label(y, z, kInfinity), rank3_matrix(y, z, kInfinity), 6);
  return c;
}

Corpus Corpus::finite_groups() {
  Corpus c;
  add(c, "A1", CoxeterMatrix::from_rows({{1}}), 1);
  for (int m : {2, 3, 4, 5, 6}) add(c, "I2(" + bond(m) + ")", CoxeterMatrix::dihedral(m), m);
  add(c, "A1xA1xA1", rank3_matrix(2, 2, 2), 3);
  for (int m : {3, 4, 5}) add(c, "A1xI2(" + bond(m) + ")", rank3_matrix(2, 2, m), m + 1);
  add(c, "A3", path(3, {3, 3}), 6);
  add(c, "B3", path(3, {4, 3}), 9);
  add(c, "H3", path(3, {5, 3}), 15);
  add(c, "A4", path(4, {3, 3, 3}), 10);
  return c;
}

Corpus Corpus::invariance() {
  Corpus c;
  for (int m : {2, 3, 4, 5, 6, kInfinity}) add(c, "I2(" + bond(m) + ")", CoxeterMatrix::dihedral(m));
  rank3_multisets({2, 3, 4}, [&](int x, int y, int z) {
    CoxeterMatrix m = rank3_matrix(x, y, z);
    add(c, rank3_label(x, y, z), m, std::min(6, default_bound(m)));
  });
  add(c, "A3", path(3, {3, 3}), 6);
  add(c, "B3", path(3, {4, 3}), 6);
  c.pairs.push_back({CoxeterMatrix::dihedral(4), "s0.s1.s0", CoxeterMatrix::dihedral(3), "s0.s1.s0"});
  c.pairs.push_back({CoxeterMatrix::dihedral(6), "s0.s1.s0.s1", CoxeterMatrix::dihedral(4), "s1.s0.s1.s0"});
  c.pairs.push_back({path(3, {4, 3}), "s0.s1.s0", path(3, {3, 3}), "s1.s2.s1"});
  return c;
}

Corpus Corpus::from_json(const json& j) {
  if (!j.is_object() || !j.contains("cases") || !j.at("cases").is_array())
    throw InvalidInput("corpus JSON needs a \"cases\" list");
  Corpus c;
  for (const json& e : j.at("cases")) {
    if (!e.is_object() || !e.contains("matrix")) throw InvalidInput("corpus case needs \"matrix\"");
    CoxeterMatrix m = CoxeterMatrix::from_json(e.at("matrix"));
    int bound = e.value("bound", 0);
    if (bound < 0) throw InvalidInput("corpus case bound must be >= 1");
    add(c, e.value("label", "case" + std::to_string(c.cases.size())), m, bound);
  }
  if (j.contains("pairs")) {
    for (const json& p : j.at("pairs")) {
      if (!p.is_object() || !p.contains("m1") || !p.contains("m2") || !p.contains("v1") || !p.contains("v2"))
        throw InvalidInput("interval pair needs m1, v1, m2, v2");
      c.pairs.push_back({CoxeterMatrix::from_json(p.at("m1")), p.at("v1").get<std::string>(),
                         CoxeterMatrix::from_json(p.at("m2")), p.at("v2").get<std::string>()});
    }
  }
  return c;
}

json Corpus::to_json() const {
  json cs = json::array(), ps = json::array();
  for (const CorpusCase& c : cases) cs.push_back({{"label", c.label}, {"matrix", c.matrix.to_json()}, {"bound", c.bound}});
  for (const IntervalPair& p : pairs)
    ps.push_back({{"m1", p.m1.to_json()}, {"v1", p.v1}, {"m2", p.m2.to_json()}, {"v2", p.v2}});
  return {{"cases", cs}, {"pairs", ps}};
}

// ---------------------------------------------------------------- reports

bool SuiteReport::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
}

std::uint64_t SuiteReport::checks() const {
  std::uint64_t n = 0;
  for (const CaseResult& c : cases) n += c.checks;
  return n;
}

json SuiteReport::to_json(bool timings) const {
  json cs = json::array();
  for (const CaseResult& c : cases) {
    json e{{"index", c.index}, {"label", c.label}, {"bound", c.bound}, {"pass", c.pass}, {"checks", c.checks}};
    if (!c.notes.is_null()) e["notes"] = c.notes;
    if (!c.counterexample.is_null()) e["counterexample"] = c.counterexample;
    if (timings) e["seconds"] = c.seconds;
    cs.push_back(std::move(e));
  }
  return {{"suite", suite}, {"pass", pass()}, {"checks", checks()}, {"cases", cs}};
}

std::string SuiteReport::to_text(bool timings) const {
  std::ostringstream out;
  out << "suite " << suite << ": " << (pass() ? "PASS" : "FAIL") << " (" << cases.size() << " cases, "
      << checks() << " checks)\n";
  for (const CaseResult& c : cases) {
    out << "  [" << c.index << "] " << c.label << " L=" << c.bound << ": " << (c.pass ? "pass" : "FAIL") << " ("
        << c.checks << " checks";
    if (timings) out << ", " << c.seconds << "s";
    out << ")";
    if (!c.notes.is_null()) out << " " << c.notes.dump();
    out << "\n";
    if (!c.pass) out << "      " << c.counterexample.dump() << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------- harness

namespace {

struct Failure {
  json detail;
};

class Ctx {
 public:
  explicit Ctx(CaseResult& r) : r_(r) {}

  template <class Detail>
  void check(bool ok, Detail&& detail) {
    ++r_.checks;
    if (!ok) throw Failure{detail()};
  }
  void note(const std::string& key, std::int64_t inc = 1) {
    if (r_.notes.is_null()) r_.notes = json::object();
    r_.notes[key] = r_.notes.value(key, std::int64_t{0}) + inc;
  }

 private:
  CaseResult& r_;
};

using CaseFn = std::function<void(const CorpusCase&, Ctx&)>;

SuiteReport run_cases(const std::string& suite, const Corpus& corpus, const VerifyOptions& o, const CaseFn& fn) {
  SuiteReport report{suite, std::vector<CaseResult>(corpus.cases.size()), false};
  std::atomic<std::size_t> next{0};
  std::atomic<bool> budget{false};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < corpus.cases.size();) {
      const CorpusCase& c = corpus.cases[i];
      CaseResult& r = report.cases[i];
      r.index = i;
      r.label = c.label;
      r.bound = c.bound;
      auto t0 = std::chrono::steady_clock::now();
      auto failed = [&](json detail) {
        r.pass = false;
        r.counterexample = {{"matrix", c.matrix.to_json()}, {"bound", c.bound}, {"detail", std::move(detail)}};
      };
      try {
        Ctx ctx(r);
        fn(c, ctx);
      } catch (const Failure& f) {
        failed(f.detail);
      } catch (const BudgetExceeded& e) {
        budget = true;
        failed({{"error", e.what()}});
      } catch (const std::exception& e) {
        failed({{"error", e.what()}});
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(corpus.cases.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  report.budget_exceeded = budget;
  return report;
}

json ref(const PartialMatching& phi) {
  return {{"base", phi.ball().matrix().name(phi.base())}, {"family", family_to_json(phi.ball().matrix(), phi.family())}};
}

json poly(const IntPoly& p) { return p.to_json(); }

template <class F>
void for_each_matching(const BallPtr& ball, F f) {
  const CoxeterMatrix& m = ball->matrix();
  for (Generator a : m.generators()) {
    std::size_t n = count_families(m, a, ball->bound());
    for (std::size_t i = 0; i < n; ++i) {
      PartialMatching phi = extend_maximal(family_at(m, a, ball->bound(), i), ball);
      f(phi);
    }
  }
}

GeneratorSet set_of(std::initializer_list<Generator> gs) {
  GeneratorSet s;
  for (Generator g : gs) s.insert(g);
  return s;
}

std::vector<Generator> others(const CoxeterMatrix& m, Generator a) {
  std::vector<Generator> out;
  for (Generator s : m.generators())
    if (s != a) out.push_back(s);
  return out;
}

bool all_finite(const CoxeterMatrix& m) {
  for (Generator s : m.generators())
    for (Generator t : m.generators())
      if (!m.finite(s, t)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- suites

SuiteReport suite_polynomials(const Corpus& corpus, const VerifyOptions& o) {
  return run_cases("polynomials", corpus, o, [](const CorpusCase& c, Ctx& ctx) {
    BallPtr ball = GroupBall::build(c.matrix, c.bound);
    const GroupBall& b = *ball;
    PolyContext pc(ball);
    for (ElemId y = 0; y < b.size(); ++y) {
      for (ElemId x = 0; x < b.size() && b.len(x) <= b.len(y); ++x) {
        const IntPoly& rl = pc.r(x, y, Side::Left);
        const IntPoly& rr = pc.r(x, y, Side::Right);
        auto where = [&](const char* what) {
          return [&, what] {
            return json{{"x", b.format(x)}, {"y", b.format(y)}, {"failed", what}, {"left", poly(rl)}, {"right", poly(rr)}};
          };
        };
        ctx.check(rl == rr, where("left and right recursions differ"));
        if (!b.leq(x, y)) {
          ctx.check(rl.is_zero(), where("R nonzero off the order"));
          continue;
        }
        const int d = b.len(y) - b.len(x);
        ctx.check(rl.degree() == d, where("deg R != l(y)-l(x)"));
        ctx.check(rl.coeff(0) == (d % 2 ? -1 : 1), where("constant term of R is not (-1)^d"));
        if (d > 0) ctx.check(rl.at_one() == 0, where("R(1) != 0"));
        const IntPoly& p = pc.kl(x, y);
        auto kw = [&] { return json{{"x", b.format(x)}, {"y", b.format(y)}, {"P", poly(p)}}; };
        if (d == 0) {
          ctx.check(p == IntPoly::one(), kw);
        } else {
          ctx.check(p.degree() <= (d - 1) / 2, kw);
          ctx.check(p.coeff(0) == 1, kw);
        }
      }
    }
    ctx.note("memo", static_cast<std::int64_t>(pc.memo_size()));
  });
}

SuiteReport suite_descent_formulas(const Corpus& corpus, const VerifyOptions& o) {
  return run_cases("descent", corpus, o, [](const CorpusCase& c, Ctx& ctx) {
    BallPtr ball = GroupBall::build(c.matrix, c.bound);
    const GroupBall& b = *ball;
    PolyContext pc(ball);
    const IntPoly q = IntPoly::q(), q1 = IntPoly::q_minus_1();
    for_each_matching(ball, [&](const PartialMatching& phi) {
      ctx.note("matchings");
      std::vector<ElemId> lifted;
      for (ElemId x : phi.lifted())
        if (b.len(x) <= phi.reliable_bound()) lifted.push_back(x);
      for (ElemId x : lifted) {
        const ElemId px = phi.partner(x);
        for (ElemId y : lifted) {
          const ElemId py = phi.partner(y);
          const IntPoly& rxy = pc.r(x, y);
          const IntPoly& rpp = pc.r(px, py);
          ctx.check(rpp == rxy, [&] {
            return json{{"matching", ref(phi)}, {"x", b.format(x)}, {"y", b.format(y)},
                        {"identity", "R(phi x, phi y) = R(x, y)"}, {"lhs", poly(rpp)}, {"rhs", poly(rxy)}};
          });
          const IntPoly lhs = pc.r(x, py);
          const IntPoly rhs = q1 * rxy + q * pc.r(px, y);
          ctx.check(lhs == rhs, [&] {
            return json{{"matching", ref(phi)}, {"x", b.format(x)}, {"y", b.format(y)},
                        {"identity", "R(x, phi y) = (q-1) R(x, y) + q R(phi x, y)"},
                        {"lhs", poly(lhs)}, {"rhs", poly(rhs)}};
          });
        }
      }
    });
  });
}

SuiteReport suite_maximal_extension(const Corpus& corpus, const VerifyOptions& o) {
  return run_cases("extension", corpus, o, [](const CorpusCase& c, Ctx& ctx) {
    BallPtr ball = GroupBall::build(c.matrix, c.bound);
    const GroupBall& b = *ball;
    const CoxeterMatrix& m = c.matrix;
    const int L = c.bound;
    for (Generator a : m.generators()) {
      std::size_t n = count_families(m, a, L);
      for (std::size_t i = 0; i < n; ++i) {
        const MatchingFamily f = family_at(m, a, L, i);
        const PartialMatching phi = extend_maximal(f, ball);
        const int rb = phi.reliable_bound();
        ctx.note("matchings");
        auto where = [&](const char* what, ElemId x = kNone) {
          return [&, what, x] {
            json d{{"matching", ref(phi)}, {"failed", what}};
            if (x != kNone) d["element"] = b.format(x);
            return d;
          };
        };
        MatchingCheck sm = is_special_matching(phi);
        ctx.check(sm.ok, [&] { return json{{"matching", ref(phi)}, {"special", check_to_json(b, sm)}}; });
        ctx.check(extend_maximal(f, ball) == phi, where("extension is not deterministic"));
        const MatchingFamily back = restrict_to_principal(phi);
        ctx.check(back == f, where("restrict(extend(f)) != f"));
        ctx.check(extend_maximal(back, ball) == phi, where("extend(restrict(phi)) != phi"));
        for (ElemId w = 0; w < b.size() && b.len(w) <= rb; ++w) {
          ctx.check(phi.status(w) != Status::Unresolved, where("unresolved below the reliable bound", w));
          const GeneratorSet sup = b.support(w);
          if (sup.size() > 2 || !phi.in_domain(w)) {
            if (sup.size() <= 2 && sup.contains(a)) ctx.check(false, where("principal element outside Q", w));
            continue;
          }
          const GeneratorSet img = b.support(phi.partner(w));
          if (sup.contains(a) || sup.size() <= 1) {
            // principal dihedral subgroups are stable under φ
            GeneratorSet ps = sup;
            ps.insert(a);
            if (ps.size() <= 2) ctx.check(img.subset_of(ps), where("P_s is not stable", w));
          }
          if (!sup.contains(a) && sup.size() == 2)
            ctx.check(phi.raised(w) && img.contains(a), where("non-principal dihedral element not raised out", w));
        }
      }
      // A broken member is rejected before extension.
      MatchingFamily bad = family_at(m, a, L, 0);
      for (DihedralMatching& d : bad.members) {
        if (d.m == 2 || d.pairs.size() < 3) continue;
        Word& y = d.pairs[1].second;
        y = alternating(y.front() == d.a ? d.s : d.a, y.front() == d.a ? d.a : d.s, static_cast<int>(y.size()),
                        AltForm::Prefix);
        bool rejected = false;
        try {
          extend_maximal(bad, ball);
        } catch (const InvalidInput&) {
          rejected = true;
        }
        ctx.check(rejected, [&] { return json{{"failed", "perturbed family was accepted"}, {"family", family_to_json(m, bad)}}; });
        break;
      }
    }
  });
}

SuiteReport suite_regularity(const Corpus& corpus, const VerifyOptions& o) {
  return run_cases("regularity", corpus, o, [](const CorpusCase& c, Ctx& ctx) {
    BallPtr ball = GroupBall::build(c.matrix, c.bound);
    const GroupBall& b = *ball;
    const CoxeterMatrix& m = c.matrix;
    for_each_matching(ball, [&](const PartialMatching& phi) {
      const Generator a = phi.base();
      const int rb = phi.reliable_bound();
      ctx.note("matchings");
      auto where = [&](std::string what) { return [&, what] { return json{{"matching", ref(phi)}, {"failed", what}}; }; };
      for (Side side : {Side::Left, Side::Right}) {
        const char* sn = side == Side::Left ? "left" : "right";
        for (Generator s : m.generators()) {
          const bool def = is_regular(phi, s, side);
          bool restricted = true;
          if (s != a) {
            restricted = is_regular_on_principal(phi, s, s, side);
          } else {
            for (Generator t : others(m, a)) restricted = restricted && is_regular_on_principal(phi, t, a, side);
          }
          ctx.check(def == restricted, where(std::string("regularity of φ and of its principal restriction differ for ") +
                                             m.name(s) + " on the " + sn));
          if (def) ctx.note(std::string(sn) + "-regular");
        }
      }
      // Dihedral criterion on each principal member.
      for (const DihedralMatching& d : phi.family().members) {
        for (Generator x : {d.a, d.s}) {
          ctx.check(regularity_criterion_dihedral(d, x) == is_regular(d, x, Side::Left),
                    where("dihedral criterion disagrees with the definition for " + m.name(x) + " on <" +
                          m.name(d.a) + "," + m.name(d.s) + ">"));
        }
      }
      // Product formula: X from multiplication members, Y from a-regular members.
      for (Side side : {Side::Left, Side::Right}) {
        const Side mult = side == Side::Left ? Side::Right : Side::Left;
        GeneratorSet X = set_of({a}), Y = set_of({a});
        for (Generator t : others(m, a)) {
          if (principal_is_multiplication(phi, t, mult)) X.insert(t);
          if (is_regular_on_principal(phi, t, a, side)) Y.insert(t);
        }
        FactorizationCheck pf = check_product_formula(phi, X, Y, side);
        ctx.check(pf.ok, [&] {
          return json{{"matching", ref(phi)}, {"failed", "product formula"}, {"side", side == Side::Left ? "left" : "right"},
                      {"message", pf.message}};
        });
      }
      // Commutation transfer: φ(sv) = sφ(v) on [e,w] ∩ P_s gives φ(sw) = sφ(w).
      for (ElemId w = 0; w < b.size() && b.len(w) < rb; ++w) {
        if (!phi.in_domain(w)) continue;
        const std::vector<ElemId> below = b.lower_interval(w);
        for (Side side : {Side::Left, Side::Right}) {
          for (Generator s : m.generators()) {
            bool hyp = true;
            for (ElemId v : below) {
              const GeneratorSet sup = b.support(v);
              GeneratorSet ps = sup;
              ps.insert(a);
              if (s != a) ps.insert(s);
              if (ps.size() > 2) continue;  // v ∉ P_s (or P)
              if (s != a && !sup.subset_of(set_of({a, s}))) continue;
              const ElemId sv = b.mul(v, s, side), spv = b.mul(phi.partner(v), s, side);
              if (spv == kNone || !phi.in_domain(sv) || phi.partner(sv) != spv) {
                hyp = false;
                break;
              }
            }
            if (!hyp) continue;
            const ElemId sw = b.mul(w, s, side), spw = b.mul(phi.partner(w), s, side);
            if (spw == kNone) continue;
            ctx.check(phi.in_domain(sw) && phi.partner(sw) == spw, [&] {
              return json{{"matching", ref(phi)}, {"failed", "commutation transfer"}, {"w", b.format(w)},
                          {"s", m.name(s)}, {"side", side == Side::Left ? "left" : "right"}};
            });
          }
        }
      }
    });
  });
}

SuiteReport suite_reducibility(const Corpus& corpus, const VerifyOptions& o) {
  return run_cases("reducibility", corpus, o, [](const CorpusCase& c, Ctx& ctx) {
    BallPtr ball = GroupBall::build(c.matrix, c.bound);
    const bool laced = c.matrix.simply_laced();
    for_each_matching(ball, [&](const PartialMatching& phi) {
      ctx.note("matchings");
      ReducibilityReport r = is_reducible(phi);
      ctx.check(r.reducible, [&] { return json{{"matching", ref(phi)}, {"failed", "not reducible"}}; });
      for (const OrbitWitness& w : r.full_orbits) {
        ctx.note("full orbits");
        ctx.check(w.witness.has_value(), [&] {
          return json{{"matching", ref(phi)}, {"failed", "full orbit without a regular descent"},
                      {"orbit", {phi.ball().format(w.orbit.low), phi.ball().format(w.orbit.high)}}};
        });
      }
      if (laced && !classify_cross(phi).crossed) {
        const bool mult = phi == multiplication_matching(ball, phi.base(), Side::Right) ||
                          phi == multiplication_matching(ball, phi.base(), Side::Left);
        ctx.check(mult, [&] {
          return json{{"matching", ref(phi)}, {"failed", "simply laced, not crossed, yet not a multiplication"}};
        });
      }
    });
  });
}

SuiteReport suite_domain_factorization(const Corpus& corpus, const VerifyOptions& o) {
  return run_cases("factorization", corpus, o, [](const CorpusCase& c, Ctx& ctx) {
    BallPtr ball = GroupBall::build(c.matrix, c.bound);
    const GroupBall& b = *ball;
    for_each_matching(ball, [&](const PartialMatching& phi) {
      const CrossClassification cc = classify_cross(phi);
      ctx.note("matchings");
      for (ElemId w = 0; w < b.size() && b.len(w) <= phi.reliable_bound(); ++w) {
        if (!phi.in_domain(w)) continue;
        ctx.check(gd_membership(b, w, cc.G, cc.D), [&] {
          return json{{"matching", ref(phi)}, {"failed", "Q not inside <G><D>"}, {"element", b.format(w)}};
        });
      }
      if (!cc.crossed) return;
      ctx.note("crossed");
      const bool full = is_full_matching(phi);
      if (c.matrix.rank() == 3) {
        auto os = others(c.matrix, phi.base());
        if (c.matrix.m(os[0], os[1]) != 2) {
          ctx.check(!full, [&] { return json{{"matching", ref(phi)}, {"failed", "crossed with m_bb' > 2 but full"}}; });
        }
      }
      const FactorizationCheck left = check_factorization(phi, cc.U | cc.C, cc.V | cc.C, Side::Left);
      const FactorizationCheck right = check_factorization(phi, cc.V | cc.C, cc.U | cc.C, Side::Right);
      if (full) {
        ctx.note("crossed full");
        ctx.check(left.ok || right.ok, [&] {
          return json{{"matching", ref(phi)}, {"failed", "crossed factorization"}, {"left", left.message},
                      {"right", right.message}};
        });
      } else if (left.ok || right.ok) {
        ctx.note("crossed not full, factorizes");
      }
    });
  });
}

namespace {

void rank3_gamma(const BallPtr& ball, Ctx& ctx) {
  const GroupBall& b = *ball;
  const CoxeterMatrix& m = b.matrix();
  for (Generator a : m.generators()) {
    auto os = others(m, a);
    for (int k = 0; k < 2; ++k) {
      Roles r{a, os[k], os[1 - k]};
      if (!m.finite(a, r.b) || !m.finite(a, r.bp) || m.m(a, r.b) < 3 || m.m(a, r.bp) < 3) continue;
      const GeneratorSet G = set_of({a, r.bp}), D = set_of({a, r.b});
      std::vector<ElemId> full;
      bool visible = m.m(a, r.b) + m.m(a, r.bp) - 1 <= b.bound();
      if (!visible || !all_finite(m)) continue;
      for (ElemId w = 0; w < b.size(); ++w)
        if (gd_membership(b, w, G, D) && is_full(b, w, GeneratorSet::all(3))) full.push_back(w);
      std::vector<ElemId> expect;
      if (m.m(r.b, r.bp) == 2) expect = {b.id(gamma_word(m, r)), b.id(gamma_prime_word(m, r))};
      std::sort(expect.begin(), expect.end());
      ctx.check(full == expect, [&] {
        json f = json::array();
        for (ElemId x : full) f.push_back(b.format(x));
        return json{{"failed", "full elements of <a,b'><a,b>"}, {"a", m.name(a)}, {"b", m.name(r.b)},
                    {"bp", m.name(r.bp)}, {"found", f}};
      });
    }
  }
}

// Fullness equivalences for a non-degenerate matching where φ(b′) = b′a.
void rank3_fullness(const PartialMatching& phi, const PartialMatching& psi, Ctx& ctx) {
  const GroupBall& b = psi.ball();
  const CoxeterMatrix& m = b.matrix();
  const Generator a = psi.base();
  auto os = others(m, a);
  if (!all_finite(m)) return;
  for (Generator s : os)
    if (m.m(a, s) + 3 > b.bound() + 1) return;  // Γ′ beyond the reliable bound
  if (2 * m.max_finite_bond() > psi.reliable_bound() + 1) return;
  const bool full = is_full_matching(psi);
  auto raised_right = [&](Generator s) { return psi.partner(b.id(Word{s})) == b.id(Word{s, a}); };
  auto where = [&](const char* what) { return [&, what] { return json{{"matching", ref(phi)}, {"failed", what}}; }; };
  const bool u0 = raised_right(os[0]), u1 = raised_right(os[1]);
  const int mbb = m.m(os[0], os[1]);
  if (u0 != u1) {
    // crossed: b with φ(b) = ab, b′ with φ(b′) = b′a
    ctx.note("crossed");
    const Generator bb = u0 ? os[1] : os[0], bp = u0 ? os[0] : os[1];
    if (mbb > 2) {
      ctx.check(!full, where("crossed with m_bb' > 2 is full"));
      return;
    }
    const bool cond = (is_regular_on_principal(psi, bb, a, Side::Left) && principal_is_multiplication(psi, bp, Side::Right)) ||
                      (is_regular_on_principal(psi, bp, a, Side::Right) && principal_is_multiplication(psi, bb, Side::Left));
    ctx.check(full == cond, where("crossed fullness equivalence"));
    if (full) ctx.note("crossed full");
    return;
  }
  ctx.note("non-crossed");
  const bool rho = psi == multiplication_matching(psi.ball_ptr(), a, Side::Right);
  if (mbb > 2) {
    ctx.check(full == rho, where("m_bb' > 2: full iff right multiplication"));
    return;
  }
  if (rho) {
    ctx.check(full, where("right multiplication is not full"));
    return;
  }
  bool cond = false;
  std::vector<ElemId> expect;
  for (int k = 0; k < 2; ++k) {
    const Generator bb = os[k], bp = os[1 - k];
    if (principal_is_multiplication(psi, bp, Side::Right) && is_regular_on_principal(psi, bb, a, Side::Left)) {
      cond = true;
      Roles r{a, bb, bp};
      expect = {b.id(gamma_word(m, r)), b.id(gamma_prime_word(m, r))};
    }
  }
  ctx.check(full == cond, where("non-crossed fullness equivalence"));
  if (full) {
    ctx.note("non-crossed full");
    std::sort(expect.begin(), expect.end());
    std::vector<ElemId> got = full_elements(psi);
    std::sort(got.begin(), got.end());
    ctx.check(got == expect, where("full elements of Q are not exactly Gamma, Gamma'"));
  }
}

}  // namespace

SuiteReport suite_rank3(const Corpus& corpus, const VerifyOptions& o) {
  return run_cases("rank3", corpus, o, [](const CorpusCase& c, Ctx& ctx) {
    if (c.matrix.rank() != 3) {
      ctx.note("skipped: not rank 3");
      return;
    }
    BallPtr ball = GroupBall::build(c.matrix, c.bound);
    const GroupBall& b = *ball;
    const CoxeterMatrix& m = c.matrix;
    rank3_gamma(ball, ctx);
    for_each_matching(ball, [&](const PartialMatching& phi) {
      ctx.note("matchings");
      for (const ScenarioInstance& inst : detect_scenarios(phi)) {
        ctx.note("scenario " + scenario_name(inst.config.kind));
        if (!inst.in_range) {
          ctx.note("out of range");
          continue;
        }
        for (ElemId w : inst.predicted) {
          bool coat = true;
          for (ElemId x : b.coatoms(w)) coat = coat && phi.in_domain(x);
          ctx.check(phi.status(w) == Status::Excluded && coat, [&] {
            return json{{"matching", ref(phi)}, {"scenario", scenario_name(inst.config.kind)},
                        {"mirrored", inst.mirrored}, {"t", inst.config.t}, {"t2", inst.config.t2},
                        {"b", m.name(inst.config.roles.b)}, {"bp", m.name(inst.config.roles.bp)},
                        {"predicted", b.format(w)}, {"excluded", phi.status(w) == Status::Excluded},
                        {"coatoms_in_domain", coat}};
          });
        }
      }
      const Generator a = phi.base();
      auto os = others(m, a);
      const int ma0 = m.m(a, os[0]), ma1 = m.m(a, os[1]);
      if (ma0 == 2 || ma1 == 2) {
        // degenerate: with m_ab' = m_bb' = 2 everything is defined and b′-regular
        if (m.m(os[0], os[1]) != 2) return;
        for (int k = 0; k < 2; ++k) {
          const Generator bp = os[k];
          if (m.m(a, bp) != 2) continue;
          bool whole = true;
          for (ElemId w = 0; w < b.size() && b.len(w) <= phi.reliable_bound(); ++w) whole = whole && phi.in_domain(w);
          ctx.check(whole && is_regular(phi, bp, Side::Left),
                    [&] { return json{{"matching", ref(phi)}, {"failed", "degenerate m_ab' = m_bb' = 2"}}; });
        }
        return;
      }
      const auto& ball_ref = phi.ball();
      const bool left_type = phi.partner(ball_ref.id(Word{os[0]})) == ball_ref.id(Word{a, os[0]}) &&
                             phi.partner(ball_ref.id(Word{os[1]})) == ball_ref.id(Word{a, os[1]});
      if (left_type) {
        rank3_fullness(phi, mirror(phi), ctx);
      } else {
        rank3_fullness(phi, phi, ctx);
      }
    });
  });
}

SuiteReport suite_whole_group(const Corpus& corpus, const VerifyOptions& o) {
  return run_cases("whole-group", corpus, o, [](const CorpusCase& c, Ctx& ctx) {
    BallPtr ball = GroupBall::build(c.matrix, c.bound);
    const GroupBall& b = *ball;
    const CoxeterMatrix& m = c.matrix;
    ctx.check(b.complete(), [&] { return json{{"failed", "ball is not the whole group"}}; });
    for (Generator a : m.generators()) {
      // degenerate: S = {a,b} ⊔ C with every c commuting with a and b
      std::optional<Generator> deg;
      for (Generator bb : others(m, a)) {
        bool ok = true;
        for (Generator s : m.generators())
          if (s != a && s != bb) ok = ok && m.m(a, s) == 2 && m.m(bb, s) == 2;
        if (ok && !deg) deg = bb;
      }
      std::vector<PartialMatching> total;
      const std::size_t n = count_families(m, a, c.bound);
      for (std::size_t i = 0; i < n; ++i) {
        PartialMatching phi = extend_maximal(family_at(m, a, c.bound, i), ball);
        bool all = true;
        for (ElemId w = 0; w < b.size(); ++w) all = all && phi.in_domain(w);
        if (all) total.push_back(std::move(phi));
      }
      ctx.note("total", static_cast<std::int64_t>(total.size()));
      auto names = [&] {
        json t = json::array();
        for (const PartialMatching& phi : total) t.push_back(ref(phi));
        return json{{"base", m.name(a)}, {"total", t}};
      };
      if (deg) {
        const std::size_t expect = enumerate_dihedral_matchings(a, *deg, m.m(a, *deg), c.bound).size();
        ctx.check(total.size() == expect, [&] {
          json d = names();
          d["failed"] = "degenerate case count";
          d["expected"] = expect;
          return d;
        });
        for (const PartialMatching& phi : total)
          for (Generator s : m.generators())
            if (s != a && s != *deg)
              ctx.check(is_regular(phi, s, Side::Left) && is_regular(phi, s, Side::Right), [&] {
                return json{{"matching", ref(phi)}, {"failed", "not regular for a commuting generator"}};
              });
      } else {
        const PartialMatching rho = multiplication_matching(ball, a, Side::Right);
        const PartialMatching lam = multiplication_matching(ball, a, Side::Left);
        const std::size_t expect = rho == lam ? 1 : 2;
        bool ok = total.size() == expect;
        for (const PartialMatching& phi : total) ok = ok && (phi == rho || phi == lam);
        ctx.check(ok, [&] {
          json d = names();
          d["failed"] = "total matchings are not exactly the multiplications";
          return d;
        });
      }
    }
  });
}

namespace {

// R and P transport along a node map between two intervals [e,v], [e,v′].
void transport(Ctx& ctx, PolyContext& c1, const GradedPoset& p1, PolyContext& c2, const GradedPoset& p2,
               const NodeMap& f, const json& what) {
  const GroupBall& b1 = c1.ball();
  const GroupBall& b2 = c2.ball();
  for (std::size_t i = 0; i < p1.size(); ++i) {
    for (std::size_t j = 0; j < p1.size(); ++j) {
      const ElemId x = p1.elements[i], y = p1.elements[j];
      const ElemId fx = p2.elements[f[i]], fy = p2.elements[f[j]];
      if (!b1.leq(x, y)) continue;
      auto where = [&](const char* kind, const IntPoly& l, const IntPoly& r) {
        return [&, kind] {
          json d = what;
          d["failed"] = kind;
          d["x"] = b1.format(x);
          d["y"] = b1.format(y);
          d["psi_x"] = b2.format(fx);
          d["psi_y"] = b2.format(fy);
          d["lhs"] = l.to_json();
          d["rhs"] = r.to_json();
          return d;
        };
      };
      const IntPoly& r1 = c1.r(x, y);
      const IntPoly& r2 = c2.r(fx, fy);
      ctx.check(r1 == r2, where("R not invariant", r1, r2));
      const IntPoly& k1 = c1.kl(x, y);
      const IntPoly& k2 = c2.kl(fx, fy);
      ctx.check(k1 == k2, where("P not invariant", k1, k2));
    }
  }
}

std::vector<std::vector<int>> relabelings(int rank) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(rank);
  std::iota(p.begin(), p.end(), 0);
  if (rank <= 3) {
    while (std::next_permutation(p.begin(), p.end())) out.push_back(p);
  } else {
    std::vector<int> rev(p.rbegin(), p.rend());
    out.push_back(rev);
  }
  return out;
}

void check_pair(Ctx& ctx, PolyContext& c1, ElemId v1, PolyContext& c2, ElemId v2, json what) {
  const GradedPoset p1 = interval(c1.ball(), c1.ball().identity(), v1);
  const GradedPoset p2 = interval(c2.ball(), c2.ball().identity(), v2);
  std::optional<NodeMap> f = poset_isomorphism(p1, p2);
  if (!f) {
    ctx.note("no isomorphism");
    return;
  }
  ctx.check(is_isomorphism(p1, p2, *f), [&] {
    json d = what;
    d["failed"] = "returned map is not an isomorphism";
    return d;
  });
  transport(ctx, c1, p1, c2, p2, *f, what);
  if (p1.size() <= 40) {
    IsomorphismList all = all_isomorphisms(p1, p2);
    ctx.note("witnesses", static_cast<std::int64_t>(all.maps.size()));
    for (const NodeMap& g : all.maps) transport(ctx, c1, p1, c2, p2, g, what);
  }
}

}  // namespace

SuiteReport suite_invariance(const Corpus& corpus, const VerifyOptions& o) {
  // Allowlisted pairs run as extra cases after the corpus cases.
  Corpus all = corpus;
  for (std::size_t i = 0; i < corpus.pairs.size(); ++i) {
    const IntervalPair& p = corpus.pairs[i];
    all.cases.push_back({"pair " + p.v1 + " ~ " + p.v2, p.m1, -static_cast<int>(i) - 1});
  }
  return run_cases("invariance", all, o, [&corpus](const CorpusCase& c, Ctx& ctx) {
    if (c.bound < 0) {
      const IntervalPair& p = corpus.pairs[static_cast<std::size_t>(-c.bound - 1)];
      const Word w1 = p.m1.parse(p.v1), w2 = p.m2.parse(p.v2);
      BallPtr b1 = GroupBall::build(p.m1, static_cast<int>(reduce(p.m1, w1).len()));
      BallPtr b2 = GroupBall::build(p.m2, static_cast<int>(reduce(p.m2, w2).len()));
      PolyContext c1(b1), c2(b2);
      check_pair(ctx, c1, b1->id(w1), c2, b2->id(w2), json{{"pair", {p.v1, p.v2}}, {"m2", p.m2.to_json()}});
      return;
    }
    BallPtr ball = GroupBall::build(c.matrix, c.bound);
    const GroupBall& b = *ball;
    PolyContext pc(ball);
    const int flat_len = std::min(c.bound, 6), relabel_len = std::min(c.bound, 5);
    for (ElemId v = 0; v < b.size() && b.len(v) <= flat_len; ++v) {
      FlattenResult fr = flatten(b, v);
      if (fr.matrix == c.matrix) continue;
      ctx.note("flatten pairs");
      PolyContext pf(fr.ball);
      const GradedPoset p1 = interval(b, b.identity(), v);
      const GradedPoset p2 = interval(*fr.ball, fr.ball->identity(), fr.image);
      NodeMap f(p1.size(), -1);
      for (const auto& [u, pu] : fr.map) f[p1.index_of(u)] = p2.index_of(pu);
      json what{{"v", b.format(v)}, {"flattened", fr.matrix.to_json()}};
      ctx.check(is_isomorphism(p1, p2, f), [&] {
        json d = what;
        d["failed"] = "flattening map is not an isomorphism";
        return d;
      });
      transport(ctx, pc, p1, pf, p2, f, what);
    }
    for (const std::vector<int>& perm : relabelings(c.matrix.rank())) {
      const CoxeterMatrix pm = c.matrix.permuted(perm);
      BallPtr pb = GroupBall::build(pm, relabel_len);
      PolyContext pp(pb);
      std::vector<int> inv(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
      for (ElemId v = 0; v < b.size() && b.len(v) <= relabel_len; ++v) {
        ctx.note("relabel pairs");
        Word w;
        for (Generator s : b.word(v)) w.push_back(Generator(inv[s.index]));
        check_pair(ctx, pc, v, pp, pb->id(w), json{{"v", b.format(v)}, {"relabel", perm}});
      }
    }
  });
}

// ---------------------------------------------------------------- registry

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"polynomials",   "descent", "extension",   "regularity", "reducibility",
                                              "factorization", "rank3",   "whole-group", "invariance"};
  return names;
}

Corpus default_corpus(const std::string& suite) {
  if (suite == "rank3") return Corpus::rank3();
  if (suite == "factorization") {
    Corpus c = Corpus::rank3();
    Corpus s = Corpus::standard();
    c.cases.push_back(s.cases.back());  // A4
    return c;
  }
  if (suite == "whole-group") return Corpus::finite_groups();
  if (suite == "invariance") return Corpus::invariance();
  return Corpus::standard();
}

SuiteReport run_suite(const std::string& name, const Corpus& c, const VerifyOptions& o) {
  if (name == "polynomials") return suite_polynomials(c, o);
  if (name == "descent") return suite_descent_formulas(c, o);
  if (name == "extension") return suite_maximal_extension(c, o);
  if (name == "regularity") return suite_regularity(c, o);
  if (name == "reducibility") return suite_reducibility(c, o);
  if (name == "factorization") return suite_domain_factorization(c, o);
  if (name == "rank3") return suite_rank3(c, o);
  if (name == "whole-group") return suite_whole_group(c, o);
  if (name == "invariance") return suite_invariance(c, o);
  throw InvalidInput("unknown suite \"" + name + "\"");
}

}  // namespace bruhat
