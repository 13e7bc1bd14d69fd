// verify.hpp
// Exhaustive verification suites over a corpus of Coxeter matrices.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bruhat/coxeter.hpp"

namespace bruhat {

struct CorpusCase {
  std::string label;
  CoxeterMatrix matrix;
  int bound = 0;
};

// An explicit pair of intervals [e,v] and [e,v′] for the invariance suite.
struct IntervalPair {
  CoxeterMatrix m1;
  std::string v1;
  CoxeterMatrix m2;
  std::string v2;
};

struct Corpus {
  std::vector<CorpusCase> cases;
  std::vector<IntervalPair> pairs;

  // rank 2 with m ∈ {2..6, ∞}, rank 3 bond multisets from {2..5} plus those
  // with one ∞ bond, and the rank-4 path A4.
  static Corpus standard();
  // rank 3 with larger balls, enough to hold Γ′ and the predicted obstructions.
  static Corpus rank3();
  // finite groups with the ball equal to the whole group.
  static Corpus finite_groups();
  static Corpus invariance();
  // {"cases": [{"label", "matrix": {...}, "bound"}], "pairs": [...]}
  static Corpus from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// max finite m_st + 2 capped at 12; 6 when some bond is ∞.
int default_bound(const CoxeterMatrix& m);

struct CaseResult {
  std::size_t index = 0;
  std::string label;
  int bound = 0;
  bool pass = true;
  std::uint64_t checks = 0;
  nlohmann::json counterexample;  // null when passing
  nlohmann::json notes;           // suite-specific tallies
  double seconds = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;
  bool budget_exceeded = false;

  bool pass() const;
  std::uint64_t checks() const;
  nlohmann::json to_json(bool timings = false) const;
  std::string to_text(bool timings = false) const;
};

struct VerifyOptions {
  unsigned jobs = 1;
};

SuiteReport suite_polynomials(const Corpus& c, const VerifyOptions& o = {});
SuiteReport suite_descent_formulas(const Corpus& c, const VerifyOptions& o = {});
SuiteReport suite_maximal_extension(const Corpus& c, const VerifyOptions& o = {});
SuiteReport suite_regularity(const Corpus& c, const VerifyOptions& o = {});
SuiteReport suite_reducibility(const Corpus& c, const VerifyOptions& o = {});
SuiteReport suite_domain_factorization(const Corpus& c, const VerifyOptions& o = {});
SuiteReport suite_rank3(const Corpus& c, const VerifyOptions& o = {});
SuiteReport suite_whole_group(const Corpus& c, const VerifyOptions& o = {});
SuiteReport suite_invariance(const Corpus& c, const VerifyOptions& o = {});

// polynomials, descent, extension, regularity, reducibility, factorization,
// rank3, whole-group, invariance
const std::vector<std::string>& suite_names();
Corpus default_corpus(const std::string& suite);
// Throws InvalidInput for an unknown name.
SuiteReport run_suite(const std::string& name, const Corpus& c, const VerifyOptions& o = {});

}  // namespace bruhat
