// rank3.hpp
// Rank-3 case analysis: scenario detection on a maximal matching and the
// predicted minimal elements of W ∖ Q, plus the Γ/Γ′ full elements.
#pragma once

#include <string>
#include <vector>

#include "bruhat/matching.hpp"

namespace bruhat {

enum class Scenario {
  I2,     // m_ab' ≥ 3, φ = xa on [e,ab'a], β not a-left-regular
  I3,     // m_bb' ≥ 3, φ(b') = b'a, β not b-left-regular
  II1,    // crossed, φ(ab') = ab'a, β not a-left-regular
  II2,    // crossed, m_ab' ≥ 4, φ(ab') = b'ab', φ(ab'a) = b'ab'a, β ≠ ax
  II3,    // crossed, m_ab' ≥ 5, φ(ab') = b'ab', φ(ab'a) = ab'ab'
  II5,    // crossed, β a-left-regular, β' a-right-regular, neither a multiplication
  III1_1, // non-crossed, β ≠ xa, φ(ab') = ab'a: the set H is excluded
  III1_2, // non-crossed, β ≠ xa, φ(ab') ≠ ab'a: abb' and ab'b are excluded
  IV2,    // m_ab' = 2, m_bb' ≥ 3, φ(b) = ba, β ≠ xa: the set H is excluded
  IV3,    // m_ab' = 2, m_bb' ≥ 4, m_ab ≥ 4, φ(ab) = bab
  IV4,    // m_ab' = 2, m_bb' = 3, m_ab ≥ 4, φ(ab) = bab
};

std::string scenario_name(Scenario s);

struct Roles {
  Generator a, b, bp;  // bp is b′
};

struct ScenarioConfig {
  Scenario kind;
  Roles roles;
  int t = -1;   // deviation index on ⟨a,b⟩
  int t2 = -1;  // deviation index on ⟨a,b′⟩ (II5 only)
};

struct ScenarioInstance {
  ScenarioConfig config;
  bool mirrored = false;        // detected on the inversion conjugate
  bool in_range = true;         // predictions lie within the reliable bound
  bool claims_minimal = true;   // false for the H-set statements
  std::vector<ElemId> predicted;
};

// Predicted excluded elements for a configuration, without mirroring.
// Throws ScenarioNotCovered when bond orders or t violate the hypotheses and
// BallTooSmall when a prediction lies outside the ball.
std::vector<ElemId> predict_obstructions(const GroupBall& ball, const ScenarioConfig& config);

// Every scenario whose hypotheses hold for φ (rank 3 only), over both role
// assignments of b,b′ and over φ and its inversion conjugate.
std::vector<ScenarioInstance> detect_scenarios(const PartialMatching& phi);

// Γ_{b′,a,b} = ⟨m_ab′−1,a,b′][b,a,m_ab−1⟩ and Γ′ = ⟨m_ab′−1,a,b′] a [b,a,m_ab−1⟩.
Word gamma_word(const CoxeterMatrix& m, const Roles& r);
Word gamma_prime_word(const CoxeterMatrix& m, const Roles& r);

}  // namespace bruhat
