// poset.hpp
// Graded posets over Bruhat intervals, lower sets, and isomorphism search.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bruhat/group_ball.hpp"

namespace bruhat {

struct GradedPoset {
  std::vector<std::string> labels;        // canonical words when built from a ball
  std::vector<ElemId> elements;           // ball ids, parallel to labels (may be empty)
  std::vector<int> level;
  std::vector<std::vector<int>> up;       // covers
  std::vector<std::vector<int>> down;     // coatoms

  std::size_t size() const { return labels.size(); }
  std::vector<std::size_t> level_sizes() const;
  int index_of(ElemId x) const;           // -1 when absent
  nlohmann::json to_json() const;
  // Builds a poset from explicit cover lists. Throws InvalidInput if a cover
  // does not go up exactly one level or the bottom is not unique.
  static GradedPoset from_covers(std::vector<std::string> labels, std::vector<int> level,
                                 const std::vector<std::vector<int>>& up);
};

class LowerSet {
 public:
  LowerSet() = default;
  LowerSet(const GroupBall& ball, std::vector<ElemId> members);
  bool contains(ElemId x) const { return x < in_.size() && in_[x]; }
  const std::vector<ElemId>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<ElemId> members_;
  std::vector<bool> in_;
};

// [u,v] with level z ↦ len(z) − len(u). Throws EmptyInterval if u ≰ v.
GradedPoset interval(const GroupBall& ball, ElemId u, ElemId v);
// Induced poset on a set of ball elements (levels are lengths).
GradedPoset induced(const GroupBall& ball, const std::vector<ElemId>& carrier);
LowerSet lower_closure(const GroupBall& ball, const std::vector<ElemId>& seeds);

using NodeMap = std::vector<int>;  // node of P1 -> node of P2

std::optional<NodeMap> poset_isomorphism(const GradedPoset& p1, const GradedPoset& p2);

struct IsomorphismList {
  std::vector<NodeMap> maps;
  bool exhaustive = true;  // false when the node cap stopped the search
};
IsomorphismList all_isomorphisms(const GradedPoset& p1, const GradedPoset& p2,
                                 std::size_t node_cap = 100000);

// x ⋖ y ⇔ f(x) ⋖ f(y), levels preserved, bijective.
bool is_isomorphism(const GradedPoset& p1, const GradedPoset& p2, const NodeMap& f);

}  // namespace bruhat
