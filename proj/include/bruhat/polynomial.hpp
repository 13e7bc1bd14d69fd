// polynomial.hpp
// Integer polynomials in q with arbitrary-precision coefficients.
#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace bruhat {

using BigInt = boost::multiprecision::cpp_int;

class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<long long> coeffs);  // low to high degree
  explicit IntPoly(std::vector<BigInt> coeffs);

  static IntPoly zero() { return {}; }
  static IntPoly one() { return IntPoly{1}; }
  static IntPoly q() { return IntPoly{0, 1}; }
  static IntPoly q_minus_1() { return IntPoly{-1, 1}; }
  static IntPoly monomial(int degree, BigInt c = 1);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<BigInt>& coefficients() const { return c_; }
  BigInt coeff(int d) const;
  BigInt at_one() const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
  IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  // Terms of degree <= d.
  IntPoly truncated(int d) const;
  // q^d · p(1/q); requires d >= degree().
  IntPoly reflected(int d) const;

  std::string to_string() const;  // e.g. "q^2 - q + 1"
  nlohmann::json to_json() const;  // [1,-1,1]; big values as decimal strings
  static IntPoly from_json(const nlohmann::json& j);

 private:
  void trim();
  std::vector<BigInt> c_;
};

}  // namespace bruhat
