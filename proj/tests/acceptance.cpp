// acceptance.cpp
// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include "bruhat/kl.hpp"
#include "bruhat/matching.hpp"
#include "bruhat/rank3.hpp"
#include "bruhat/verify.hpp"
#include "oracles.hpp"

using namespace bruhat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string summary(const SuiteReport& r) {
  std::ostringstream s;
  s << r.cases.size() << " cases, " << r.checks() << " checks";
  for (const CaseResult& c : r.cases)
    if (!c.pass) {
      s << "; first failure " << c.label << ": " << c.counterexample.dump();
      break;
    }
  return s.str();
}

Outcome from_suite(const SuiteReport& r, const std::string& extra = "") {
  return {r.pass() && !r.budget_exceeded, summary(r) + extra};
}

CoxeterMatrix rank3(int x, int y, int z) { return CoxeterMatrix::from_rows({{1, x, y}, {x, 1, z}, {y, z, 1}}); }

Corpus small_rank_corpus() {
  Corpus c;
  for (int m : {2, 3, 4, 5, kInfinity}) c.cases.push_back({"I2", CoxeterMatrix::dihedral(m), 10});
  for (int x = 2; x <= 5; ++x)
    for (int y = x; y <= 5; ++y)
      for (int z = y; z <= 5; ++z) {
        CoxeterMatrix m = rank3(x, y, z);
        c.cases.push_back({"rank3", m, std::min(10, m.max_finite_bond() + 4)});
      }
  return c;
}

Outcome criterion1() {
  const Corpus c = small_rank_corpus();
  const SuiteReport r = suite_polynomials(c, {jobs()});
  // the same pairs against the Hecke algebra product
  std::uint64_t pairs = 0;
  for (const CorpusCase& k : c.cases) {
    BallPtr b = GroupBall::build(k.matrix, k.bound);
    PolyContext pc(b);
    for (ElemId y = 0; y < b->size(); ++y)
      for (const auto& [x, p] : oracle::hecke_r(*b, y)) {
        ++pairs;
        if (!(pc.r(x, y, Side::Left) == p))
          return {false, "Hecke oracle disagrees at " + b->format(x) + ", " + b->format(y)};
      }
  }
  return from_suite(r, "; " + std::to_string(pairs) + " pairs match the Hecke oracle");
}

Outcome criterion2() {
  const IntPoly q = IntPoly::q(), q1 = IntPoly::q_minus_1();
  const IntPoly L[4] = {IntPoly::one(), q1, q1 * q1, q1 * q1 * q1 + q * q1};
  std::uint64_t pairs = 0;
  for (int m : {3, 4, 5, kInfinity}) {
    BallPtr b = GroupBall::build(CoxeterMatrix::dihedral(m), m == kInfinity ? 8 : m);
    PolyContext pc(b);
    for (int d = 0; d < 4; ++d)
      if (!(dihedral_r(pc, d) == L[d])) return {false, "L_" + std::to_string(d) + " wrong for m=" + std::to_string(m)};
    for (ElemId y = 0; y < b->size(); ++y)
      for (ElemId x = 0; x < b->size(); ++x) {
        const int d = b->len(y) - b->len(x);
        if (d < 0 || d > 3 || !b->leq(x, y)) continue;
        ++pairs;
        if (!(pc.r(x, y) == L[d])) return {false, "pair " + b->format(x) + ", " + b->format(y)};
      }
  }
  return {true, "L_0..L_3 for m = 3, 4, 5, inf; " + std::to_string(pairs) + " comparable pairs agree"};
}

// Criteria 3 and 4 share one sweep over every family of both corpora.
struct FamilySweep {
  std::uint64_t matchings = 0, special_fail = 0, roundtrip_fail = 0;
  std::string first_special, first_roundtrip;
};

FamilySweep sweep_families() {
  FamilySweep s;
  Corpus c = Corpus::standard();
  for (const CorpusCase& k : Corpus::rank3().cases) c.cases.push_back(k);
  for (const CorpusCase& k : c.cases) {
    BallPtr b = GroupBall::build(k.matrix, k.bound);
    for (Generator a : k.matrix.generators()) {
      const std::size_t n = count_families(k.matrix, a, k.bound);
      for (std::size_t i = 0; i < n; ++i) {
        const MatchingFamily f = family_at(k.matrix, a, k.bound, i);
        const PartialMatching phi = extend_maximal(f, b);
        ++s.matchings;
        const MatchingCheck mc = is_special_matching(phi);
        if (!mc.ok && s.special_fail++ == 0) s.first_special = k.label + ": " + mc.message;
        const bool rt = restrict_to_principal(phi) == f && extend_maximal(restrict_to_principal(phi), b) == phi;
        if (!rt && s.roundtrip_fail++ == 0) s.first_roundtrip = k.label + " family " + std::to_string(i);
      }
    }
  }
  return s;
}

Outcome criterion7() {
  std::map<std::string, std::uint64_t> seen;
  std::uint64_t predictions = 0, skipped = 0;
  for (const CorpusCase& k : Corpus::rank3().cases) {
    BallPtr b = GroupBall::build(k.matrix, k.bound);
    for (Generator a : k.matrix.generators()) {
      const std::size_t n = count_families(k.matrix, a, k.bound);
      for (std::size_t i = 0; i < n; ++i) {
        const PartialMatching phi = extend_maximal(family_at(k.matrix, a, k.bound, i), b);
        for (const ScenarioInstance& inst : detect_scenarios(phi)) {
          ++seen[scenario_name(inst.config.kind)];
          if (!inst.in_range) {
            ++skipped;
            continue;
          }
          for (ElemId w : inst.predicted) {
            ++predictions;
            bool ok = phi.status(w) == Status::Excluded;
            for (ElemId x : b->coatoms(w)) ok = ok && phi.in_domain(x);
            if (!ok)
              return {false, k.label + " scenario " + scenario_name(inst.config.kind) + " predicted " + b->format(w) +
                                 " is not a minimal excluded element"};
          }
        }
      }
    }
  }
  std::string kinds;
  for (const auto& [name, count] : seen) kinds += (kinds.empty() ? "" : ", ") + name + " " + std::to_string(count);
  const bool all_kinds = seen.size() == 11;
  return {all_kinds, std::to_string(predictions) + " predicted elements minimal excluded (" + std::to_string(skipped) +
                         " instances beyond the reliable bound); scenarios: " + kinds +
                         (all_kinds ? "" : "; some scenario never occurred")};
}

void report(int n, const std::string& title, const std::function<Outcome()>& f, bool& all) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  all = all && o.pass;
  std::printf("criterion %2d %s  %s: %s (%.1fs)\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(), s);
  std::fflush(stdout);
}

}  // namespace

int main() {
  bool all = true;
  report(1, "R left/right recursion, degree, constant term, R(1)=0", criterion1, all);
  report(2, "dihedral R values", criterion2, all);
  FamilySweep sweep;
  report(3, "extend_maximal outputs are special matchings", [&] {
    sweep = sweep_families();
    return Outcome{sweep.special_fail == 0, std::to_string(sweep.matchings) + " matchings, " +
                                                std::to_string(sweep.special_fail) + " failures " + sweep.first_special};
  }, all);
  report(4, "restrict/extend bijection", [&] {
    return Outcome{sweep.matchings > 0 && sweep.roundtrip_fail == 0,
                   std::to_string(sweep.matchings) + " matchings, " + std::to_string(sweep.roundtrip_fail) +
                       " failures " + sweep.first_roundtrip};
  }, all);
  report(5, "descent identities for every maximal matching",
         [] { return from_suite(suite_descent_formulas(Corpus::standard(), {jobs()})); }, all);
  report(6, "every maximal matching is reducible with witnesses",
         [] { return from_suite(suite_reducibility(Corpus::standard(), {jobs()})); }, all);
  report(7, "rank-3 obstructions are minimal excluded elements", criterion7, all);
  report(8, "domain inside <G><D>; crossed factorization",
         [] { return from_suite(suite_domain_factorization(default_corpus("factorization"), {jobs()})); }, all);
  report(9, "everywhere-defined matchings on finite groups",
         [] { return from_suite(suite_whole_group(Corpus::finite_groups(), {jobs()})); }, all);
  report(10, "R and P transport along interval isomorphisms",
         [] { return from_suite(suite_invariance(Corpus::invariance(), {jobs()})); }, all);
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
