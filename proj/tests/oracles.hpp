// oracles.hpp
// Independent reference computations used to check the library.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bruhat/group_ball.hpp"
#include "bruhat/polynomial.hpp"

namespace oracle {

using bruhat::ElemId;
using bruhat::GroupBall;
using bruhat::IntPoly;

// {x ≤ y} from the subword property: reduce every subword of y's word.
std::set<ElemId> subword_lower(const GroupBall& ball, ElemId y);

// R_{x,y} for all x, read off Π (T_{s_i} − (q−1)) over a reduced word of y,
// which equals Σ_x ε_x ε_y R_{x,y} T_x.
std::map<ElemId, IntPoly> hecke_r(const GroupBall& ball, ElemId y);

// P_{x,w} for all pairs from the classical recursion with μ-coefficients.
// Indexed [x][w]; zero when x ≰ w.
std::vector<std::vector<IntPoly>> kl_recursive(const GroupBall& ball);

// All special matchings of a small poset by brute force over involutions.
// Used on dihedral balls; returns partner vectors with φ(e) = a.
std::vector<std::vector<ElemId>> brute_dihedral_matchings(const GroupBall& ball, ElemId a, int top);

}  // namespace oracle
