// kl.cpp
#include "bruhat/kl.hpp"

#include <cstdio>
#include <map>
#include <optional>

#include "bruhat/errors.hpp"

namespace bruhat {

namespace {

const IntPoly& zero_poly() {
  static const IntPoly z;
  return z;
}
const IntPoly& one_poly() {
  static const IntPoly o = IntPoly::one();
  return o;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

const IntPoly& PolyContext::r(ElemId x, ElemId y, Side side) {
  const GroupBall& b = *ball_;
  if (x == y) return one_poly();
  if (!b.leq(x, y)) return zero_poly();
  auto& memo = side == Side::Left ? r_left_ : r_right_;
  if (auto it = memo.find(key(x, y)); it != memo.end()) return it->second;
  Generator s = b.descents(y, side).members().front();
  ElemId sy = b.mul(y, s, side);
  ElemId sx = b.mul(x, s, side);
  IntPoly v;
  if (b.descents(x, side).contains(s)) {
    v = r(sx, sy, side);
  } else {
    v = IntPoly::q_minus_1() * r(x, sy, side) + IntPoly::q() * r(sx, sy, side);
  }
  return memo.emplace(key(x, y), std::move(v)).first->second;
}

const IntPoly& PolyContext::kl(ElemId x, ElemId y) {
  const GroupBall& b = *ball_;
  if (x == y) return one_poly();
  if (!b.leq(x, y)) return zero_poly();
  if (auto it = kl_.find(key(x, y)); it != kl_.end()) return it->second;
  const int d = b.len(y) - b.len(x);
  IntPoly rhs;
  for (ElemId z : b.lower_interval(y)) {
    if (z == x || !b.leq(x, z)) continue;
    rhs += r(x, z) * kl(z, y);
  }
  // q^d P(1/q) lives in degrees >= d - (d-1)/2 > (d-1)/2, so P is read off
  // the low part of -rhs.
  const int bound = (d - 1) / 2;
  IntPoly p = (-rhs).truncated(bound);
  if (!(p.reflected(d) - p - rhs).is_zero())
    throw InternalError("kl: inversion relation has no solution within the degree bound for (" +
                        b.format(x) + ", " + b.format(y) + ")");
  return kl_.emplace(key(x, y), std::move(p)).first->second;
}

nlohmann::json PolyContext::export_cache() const {
  const GroupBall& b = *ball_;
  auto dump = [&](const std::unordered_map<std::uint64_t, IntPoly>& m) {
    // std::map gives a stable key order in the file
    std::map<std::string, nlohmann::json> sorted;
    for (const auto& [k, p] : m) {
      ElemId x = static_cast<ElemId>(k >> 32), y = static_cast<ElemId>(k & 0xffffffffu);
      sorted[b.format(x) + "|" + b.format(y)] = p.to_json();
    }
    nlohmann::json out = nlohmann::json::object();
    for (auto& [k, v] : sorted) out[k] = v;
    return out;
  };
  return {{"version", kCacheVersion},
          {"matrix_hash", hex64(b.matrix().hash())},
          {"bound", b.bound()},
          {"r", dump(r_left_)},
          {"kl", dump(kl_)}};
}

bool PolyContext::import_cache(const nlohmann::json& j) {
  const GroupBall& b = *ball_;
  try {
    if (!j.is_object() || j.value("version", -1) != kCacheVersion ||
        j.value("matrix_hash", std::string()) != hex64(b.matrix().hash()) ||
        j.value("bound", -1) != b.bound())
      return false;
    std::unordered_map<std::uint64_t, IntPoly> r, k;
    auto load = [&](const nlohmann::json& src, std::unordered_map<std::uint64_t, IntPoly>& dst) {
      for (auto it = src.begin(); it != src.end(); ++it) {
        const std::string& pair = it.key();
        auto bar = pair.find('|');
        if (bar == std::string::npos) throw InvalidInput("bad cache key");
        ElemId x = b.id(b.matrix().parse(pair.substr(0, bar)));
        ElemId y = b.id(b.matrix().parse(pair.substr(bar + 1)));
        dst.emplace(key(x, y), IntPoly::from_json(it.value()));
      }
    };
    load(j.at("r"), r);
    load(j.at("kl"), k);
    for (auto& [kk, p] : r) r_left_.insert_or_assign(kk, std::move(p));
    for (auto& [kk, p] : k) kl_.insert_or_assign(kk, std::move(p));
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

IntPoly dihedral_r(PolyContext& ctx, int d) {
  const GroupBall& b = ctx.ball();
  if (b.rank() != 2) throw InvalidInput("dihedral_r: expects a rank-2 ball");
  std::optional<IntPoly> common;
  for (ElemId v = 0; v < b.size(); ++v) {
    if (b.len(v) < d) continue;
    for (ElemId u : b.level(b.len(v) - d)) {
      if (!b.leq(u, v)) continue;
      const IntPoly& p = ctx.r(u, v);
      if (!common) common = p;
      else if (!(*common == p))
        throw InternalError("dihedral_r: pairs with equal length gap disagree");
    }
  }
  if (!common) throw BallTooSmall("dihedral_r: no comparable pair with gap " + std::to_string(d));
  return *common;
}

}  // namespace bruhat
