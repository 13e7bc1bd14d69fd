// helpers.hpp
#pragma once

#include <string>
#include <vector>

#include "bruhat/coxeter.hpp"
#include "bruhat/group_ball.hpp"
#include "bruhat/polynomial.hpp"

#include <doctest.h>

namespace th {

using namespace bruhat;

inline CoxeterMatrix rank3(int x, int y, int z) { return CoxeterMatrix::from_rows({{1, x, y}, {x, 1, z}, {y, z, 1}}); }

inline CoxeterMatrix path(int rank, std::vector<int> bonds) {
  std::vector<std::vector<int>> rows(rank, std::vector<int>(rank, 2));
  for (int i = 0; i < rank; ++i) rows[i][i] = 1;
  for (int i = 0; i + 1 < rank; ++i) rows[i][i + 1] = rows[i + 1][i] = bonds[i];
  return CoxeterMatrix::from_rows(rows);
}

inline std::string canon(const CoxeterMatrix& m, const std::string& w) { return m.format(reduce(m, m.parse(w)).canonical); }

inline std::vector<std::string> fmt(const GroupBall& b, const std::vector<ElemId>& xs) {
  std::vector<std::string> out;
  for (ElemId x : xs) out.push_back(b.format(x));
  return out;
}

inline const Generator s0{0}, s1{1}, s2{2}, s3{3};

}  // namespace th

namespace doctest {
template <>
struct StringMaker<bruhat::IntPoly> {
  static String convert(const bruhat::IntPoly& p) { return p.to_string().c_str(); }
};
}  // namespace doctest
