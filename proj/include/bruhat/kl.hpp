// kl.hpp
// R-polynomials and Kazhdan-Lusztig polynomials over a ball.
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "bruhat/group_ball.hpp"
#include "bruhat/polynomial.hpp"

namespace bruhat {

// Memo tables for one ball. Single writer; use one context per thread.
class PolyContext {
 public:
  explicit PolyContext(BallPtr ball) : ball_(std::move(ball)) {}

  const GroupBall& ball() const { return *ball_; }
  const BallPtr& ball_ptr() const { return ball_; }

  // R_{x,y} by the descent recursion on the given side.
  const IntPoly& r(ElemId x, ElemId y, Side side = Side::Left);
  // P_{x,y} from the inversion relation
  //   q^{l(y)-l(x)} P(1/q) - P(q) = Σ_{x<z≤y} R_{x,z} P_{z,y}.
  const IntPoly& kl(ElemId x, ElemId y);

  // Cache file payload: versioned by matrix hash and ball bound.
  nlohmann::json export_cache() const;
  // Returns false (and loads nothing) on any version, hash or bound mismatch
  // or malformed content.
  bool import_cache(const nlohmann::json& j);
  std::size_t memo_size() const { return r_left_.size() + r_right_.size() + kl_.size(); }

 private:
  static std::uint64_t key(ElemId x, ElemId y) { return (std::uint64_t{x} << 32) | y; }

  BallPtr ball_;
  std::unordered_map<std::uint64_t, IntPoly> r_left_, r_right_, kl_;
};

inline constexpr int kCacheVersion = 1;

// Common value of R_{u,v} over comparable pairs with l(v) − l(u) = d in a
// rank-2 ball. Throws InternalError if two pairs disagree.
IntPoly dihedral_r(PolyContext& ctx, int d);

}  // namespace bruhat
