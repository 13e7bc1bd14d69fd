// matching.hpp
// Special matchings on lower sets of a ball: checking, dihedral enumeration,
// maximal extension from a family of dihedral matchings, and the regularity,
// reducibility and fullness notions built on top of them.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bruhat/group_ball.hpp"
#include "bruhat/poset.hpp"

namespace bruhat {

enum class Status : std::uint8_t { InDomain, Excluded, Unresolved };

// A special matching of the dihedral ball ⟨a,s⟩ with φ(e) = a. Pairs are
// stored once, lower element first, as words over {a,s}, sorted by
// (length, word). With m = ∞ the table stops at `bound`.
struct DihedralMatching {
  Generator a, s;
  int m = kInfinity;
  int bound = 0;
  std::vector<std::pair<Word, Word>> pairs;

  bool operator==(const DihedralMatching&) const = default;
};

struct MatchingFamily {
  Generator base;
  std::vector<DihedralMatching> members;  // one per s ≠ a, in generator order

  const DihedralMatching& member(Generator s) const;
  bool operator==(const MatchingFamily&) const = default;
};

class PartialMatching {
 public:
  PartialMatching(BallPtr ball, Generator base);

  const GroupBall& ball() const { return *ball_; }
  const BallPtr& ball_ptr() const { return ball_; }
  Generator base() const { return base_; }
  int reliable_bound() const { return reliable_bound_; }

  Status status(ElemId x) const { return status_[x]; }
  bool in_domain(ElemId x) const { return status_[x] == Status::InDomain; }
  // kNone outside the domain.
  ElemId partner(ElemId x) const { return partner_[x]; }
  const std::vector<ElemId>& partners() const { return partner_; }
  bool raised(ElemId x) const;  // x ⋖ φ(x)

  LowerSet domain() const;
  std::vector<ElemId> lifted() const;  // L_φ = {w ∈ Q : w ⋖ φ(w)}
  std::vector<ElemId> excluded() const;
  std::vector<ElemId> unresolved() const;
  const MatchingFamily& family() const { return family_; }

  void pair(ElemId x, ElemId y);
  void set_status(ElemId x, Status s) { status_[x] = s; }
  void set_reliable_bound(int b) { reliable_bound_ = b; }
  void set_family(MatchingFamily f) { family_ = std::move(f); }

  bool operator==(const PartialMatching& o) const {
    return base_ == o.base_ && partner_ == o.partner_ && status_ == o.status_;
  }

 private:
  BallPtr ball_;
  Generator base_;
  int reliable_bound_ = 0;
  std::vector<ElemId> partner_;
  std::vector<Status> status_;
  MatchingFamily family_;
};

struct MatchingCheck {
  bool ok = true;
  ElemId element = kNone;
  int clause = 0;  // 1,2,3 for the axioms; 0 for a domain problem
  std::string message;
};

// Checks (i)-(iii) for `candidate` (indexed by ball id, kNone off `over`).
MatchingCheck is_special_matching(const GroupBall& ball, const std::vector<ElemId>& candidate,
                                  const LowerSet& over);
MatchingCheck is_special_matching(const PartialMatching& phi);

// Z(φ,u) = {u} ∪ {φ(v) : v ⋖ u, v ⋖ φ(v)}, sorted. Throws UnresolvedCoatom.
std::vector<ElemId> z_set(const PartialMatching& phi, ElemId u);

std::vector<DihedralMatching> enumerate_dihedral_matchings(Generator a, Generator s, int m, int bound);
// The dihedral matching as a PartialMatching on its own rank-2 ball. Local
// generator 0 is min(a,s).
PartialMatching dihedral_as_partial(const DihedralMatching& d);
Word to_local(const DihedralMatching& d, const Word& w);
Word to_global(const DihedralMatching& d, const Word& w);

// Families in lexicographic order of the per-generator lists.
std::vector<MatchingFamily> enumerate_families(const CoxeterMatrix& m, Generator a, int bound);
std::size_t count_families(const CoxeterMatrix& m, Generator a, int bound);
MatchingFamily family_at(const CoxeterMatrix& m, Generator a, int bound, std::size_t index);
// λ_a (Side::Left) or ρ_a (Side::Right) restricted to every P_s.
MatchingFamily multiplication_family(const CoxeterMatrix& m, Generator a, int bound, Side side);

// Throws InvalidInput if a member is not a special matching or does not fit
// the matrix; InternalError on an ambiguous candidate.
PartialMatching extend_maximal(const MatchingFamily& family, BallPtr ball);
MatchingFamily restrict_to_principal(const PartialMatching& phi);
// x ↦ ax or x ↦ xa on the ball, built directly.
PartialMatching multiplication_matching(BallPtr ball, Generator a, Side side);
// φ*(x) = φ(x⁻¹)⁻¹, the conjugate by inversion.
PartialMatching mirror(const PartialMatching& phi);

// φ(xs) = φ(x)s for x in the domain (sx, sφ(x) for Left), up to the reliable bound.
bool is_regular(const PartialMatching& phi, Generator s, Side side);
// Same, restricted to the elements of ⟨a,t⟩.
bool is_regular_on_principal(const PartialMatching& phi, Generator t, Generator s, Side side);
bool is_regular(const DihedralMatching& d, Generator x, Side side);
// Dihedral shortcut: false iff some j ≤ m−3 has φ(Y_j) = Y_{j+1} and φ(xY_j) ≠ xY_{j+1}.
bool regularity_criterion_dihedral(const DihedralMatching& d, Generator x);
// φ agrees with x ↦ xa (Right) or x ↦ ax (Left) on the resolved part of P_t.
bool principal_is_multiplication(const PartialMatching& phi, Generator t, Side side);

struct Orbit {
  ElemId low = kNone;   // m
  ElemId high = kNone;  // M = φ(m)
};
std::vector<Orbit> orbits(const PartialMatching& phi);

struct OrbitWitness {
  Orbit orbit;
  std::optional<std::pair<Generator, Side>> witness;
};
struct ReducibilityReport {
  bool reducible = true;
  std::vector<OrbitWitness> full_orbits;
};
ReducibilityReport is_reducible(const PartialMatching& phi);

std::vector<ElemId> full_elements(const PartialMatching& phi);
bool is_full_matching(const PartialMatching& phi);

struct CrossClassification {
  GeneratorSet C, U, V, G, D;
  std::optional<Generator> b;  // first generator outside C where φ leaves the multiplication pattern
  GeneratorSet C1, C2;         // C′ = {c ∈ C : m_bc ≥ 3}, C″ = C ∖ C′
  bool crossed = false;
  bool left_type = false;   // U = ∅: every raised generator goes to as
  bool right_type = false;  // V = ∅
};
CrossClassification classify_cross(const PartialMatching& phi);

// w ∈ ⟨G⟩⟨D⟩. A shortest factorization is length-additive, so only
// g ≤_prefix w need to be tried.
bool gd_membership(const GroupBall& ball, ElemId w, GeneratorSet G, GeneratorSet D);

struct FactorizationCheck {
  bool ok = true;
  ElemId element = kNone;
  std::string message;
};
// Side::Left: ⟨X⟩(⟨Y⟩ ∩ Q) ⊆ Q and φ(xy) = xφ(y) for x ∈ ⟨X⟩, y ∈ ⟨Y⟩ ∩ Q.
// Side::Right: the mirror statement with x acting on the right.
FactorizationCheck check_product_formula(const PartialMatching& phi, GeneratorSet X, GeneratorSet Y, Side side);
// Side::Left: Q = ⟨X⟩(⟨Y⟩ ∩ Q) and φ(xy) = xφ(y) for x ∈ ⟨X⟩, y ∈ ⟨Y⟩ ∩ Q.
// Side::Right: the mirror statement Q = (⟨Y⟩ ∩ Q)⟨X⟩, φ(yx) = φ(y)x.
// Checked on elements of length <= reliable bound.
FactorizationCheck check_factorization(const PartialMatching& phi, GeneratorSet X, GeneratorSet Y, Side side);

}  // namespace bruhat
