// serialize.hpp
// JSON forms of matchings, families and hand-written candidate maps.
#pragma once

#include <vector>

#include <json.hpp>

#include "bruhat/matching.hpp"

namespace bruhat {

// {"base", "family": {s: [[x, φx], ...]}, "domain_bound", "pairs",
//  "excluded", "unresolved"}; words are canonical, "e" for the identity.
nlohmann::json matching_to_json(const PartialMatching& phi);

// {s: [[x, φx], ...]} keyed by generator name, lower element first.
nlohmann::json family_to_json(const CoxeterMatrix& m, const MatchingFamily& f);

// Reads {"base": a, "family": {...}}. Every member must be one of the
// special matchings of ⟨a,s⟩ at this bound, else InvalidInput.
MatchingFamily family_from_json(const CoxeterMatrix& m, const nlohmann::json& j, int bound);

// A candidate map given by {"pairs": [[x, y], ...]}; the domain is the set of
// elements mentioned. Throws InvalidInput on unknown words or clashes.
struct CandidateMap {
  std::vector<ElemId> map;
  LowerSet over;
};
CandidateMap candidate_from_json(const GroupBall& ball, const nlohmann::json& j);

nlohmann::json check_to_json(const GroupBall& ball, const MatchingCheck& c);

}  // namespace bruhat
