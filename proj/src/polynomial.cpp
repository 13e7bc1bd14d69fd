// polynomial.cpp
#include "bruhat/polynomial.hpp"

#include <algorithm>
#include <limits>

#include "bruhat/errors.hpp"

namespace bruhat {

IntPoly::IntPoly(std::initializer_list<long long> coeffs) {
  for (long long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(int degree, BigInt c) {
  std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1);
  v.back() = std::move(c);
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::coeff(int d) const {
  if (d < 0 || d >= static_cast<int>(c_.size())) return 0;
  return c_[d];
}

BigInt IntPoly::at_one() const {
  BigInt s = 0;
  for (const auto& v : c_) s += v;
  return s;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<BigInt> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigInt> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[i + k] += c_[i] * o.c_[k];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::truncated(int d) const {
  if (d < 0) return {};
  std::vector<BigInt> r(c_.begin(), c_.begin() + std::min<std::size_t>(c_.size(), d + 1));
  return IntPoly(std::move(r));
}

IntPoly IntPoly::reflected(int d) const {
  if (degree() > d) throw InternalError("IntPoly::reflected: degree exceeds reflection bound");
  if (is_zero()) return {};
  std::vector<BigInt> r(static_cast<std::size_t>(d) + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) r[d - i] = c_[i];
  return IntPoly(std::move(r));
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    const BigInt& v = c_[d];
    if (v == 0) continue;
    BigInt a = abs(v);
    if (out.empty()) out += v < 0 ? "-" : "";
    else out += v < 0 ? " - " : " + ";
    bool unit = a == 1 && d > 0;
    if (!unit) out += a.str();
    if (d >= 1) out += "q";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out;
}

nlohmann::json IntPoly::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : c_) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
      arr.push_back(v.convert_to<long long>());
    else
      arr.push_back(v.str());
  }
  return arr;
}

IntPoly IntPoly::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("polynomial: expected a coefficient array");
  std::vector<BigInt> c;
  for (const auto& v : j) {
    if (v.is_number_integer()) c.emplace_back(v.get<long long>());
    else if (v.is_string()) c.emplace_back(BigInt(v.get<std::string>()));
    else throw InvalidInput("polynomial: coefficients must be integers");
  }
  return IntPoly(std::move(c));
}

}  // namespace bruhat
