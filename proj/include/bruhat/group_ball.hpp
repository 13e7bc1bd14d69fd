// group_ball.hpp
// The finite universe of computation: all elements of length <= L, with
// multiplication tables, descent sets, coatoms and Bruhat order.
#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bruhat/coxeter.hpp"

namespace bruhat {

using ElemId = std::uint32_t;
inline constexpr ElemId kNone = std::numeric_limits<ElemId>::max();

class GroupBall;
using BallPtr = std::shared_ptr<const GroupBall>;

class GroupBall {
 public:
  // Builds level by level by right multiplication. Element ids are ordered by
  // length, then by canonical word; the identity is id 0.
  static BallPtr build(const CoxeterMatrix& m, int bound);

  const CoxeterMatrix& matrix() const { return matrix_; }
  int rank() const { return matrix_.rank(); }
  int bound() const { return bound_; }
  // True when the ball is the whole (finite) group.
  bool complete() const { return complete_; }
  std::size_t size() const { return words_.size(); }

  ElemId identity() const { return 0; }
  const Word& word(ElemId x) const { return words_[x]; }
  int len(ElemId x) const { return static_cast<int>(words_[x].size()); }
  Element element(ElemId x) const { return Element{words_[x]}; }
  std::string format(ElemId x) const { return matrix_.format(words_[x]); }

  // Evaluates an arbitrary word by successive right multiplications;
  // nullopt if some prefix leaves the ball.
  std::optional<ElemId> evaluate(const Word& w) const;
  // Canonical element lookup. Throws BallTooSmall if not in the ball.
  ElemId id(const Element& e) const;
  ElemId id(const Word& w) const;
  ElemId parse(std::string_view text) const { return id(matrix_.parse(text)); }

  // kNone when the product leaves the ball.
  ElemId mul(ElemId x, Generator s, Side side) const {
    return (side == Side::Right ? right_ : left_)[x * rank() + s.index];
  }
  ElemId inverse(ElemId x) const { return inverse_[x]; }
  GeneratorSet descents(ElemId x, Side side) const {
    return GeneratorSet(side == Side::Right ? rdesc_[x] : ldesc_[x]);
  }
  GeneratorSet support(ElemId x) const { return bruhat::support(words_[x]); }
  // Lies in some ⟨s,t⟩.
  bool is_dihedral(ElemId x) const { return support(x).size() <= 2; }

  bool leq(ElemId x, ElemId y) const {
    return (lower_[static_cast<std::size_t>(y) * stride_ + x / 64] >> (x % 64)) & 1u;
  }
  // The descent recursion evaluated directly, without the interval table.
  bool leq_recursive(ElemId x, ElemId y) const;

  const std::vector<ElemId>& coatoms(ElemId y) const { return coatoms_[y]; }
  const std::vector<ElemId>& covers(ElemId x) const { return covers_[x]; }
  // Elements of length len(y)+1 whose coatom set is exactly `coat` (sorted).
  std::vector<ElemId> with_coatoms(const std::vector<ElemId>& coat) const;

  std::vector<ElemId> lower_interval(ElemId y) const;  // [e,y], ascending ids
  const std::vector<ElemId>& level(int k) const;
  std::vector<std::size_t> level_sizes() const;
  int max_length() const { return static_cast<int>(levels_.size()) - 1; }

  // M_st, or nullopt when m_st = ∞. Throws BallTooSmall if m_st > bound.
  std::optional<ElemId> longest_dihedral(Generator s, Generator t) const;

 private:
  explicit GroupBall(const CoxeterMatrix& m, int bound) : matrix_(m), bound_(bound) {}
  void build_levels();
  void build_inverses();
  void build_coatoms();
  void build_intervals();

  CoxeterMatrix matrix_;
  int bound_;
  bool complete_ = false;
  std::vector<Word> words_;
  std::vector<std::vector<ElemId>> levels_;
  std::vector<ElemId> right_, left_, inverse_;
  std::vector<std::uint32_t> rdesc_, ldesc_;
  std::vector<std::vector<ElemId>> coatoms_, covers_;
  std::unordered_map<std::string, std::vector<ElemId>> by_coatoms_;
  std::unordered_map<std::string, ElemId> by_word_;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> lower_;
};

// Full: all m_st over J finite and M_st <= w. Vacuously true for |J| <= 1.
bool is_full(const GroupBall& ball, ElemId w, GeneratorSet J);
// Greatest element of [e,w] ∩ ⟨J⟩.
ElemId parabolic_max(const GroupBall& ball, ElemId w, GeneratorSet J);

struct FlattenResult {
  CoxeterMatrix matrix;        // M′
  BallPtr ball;                // ball of W′ with bound len(w)
  ElemId image = kNone;        // ψ(w)
  std::vector<std::pair<ElemId, ElemId>> map;  // (u, ψ(u)) for u in [e,w]
};

// m′_st = len(parabolic_max(w,{s,t})); when that is below 2 (s or t outside
// the support of w) the bond is set to 2, which does not affect [e,w].
FlattenResult flatten(const GroupBall& ball, ElemId w);

}  // namespace bruhat
