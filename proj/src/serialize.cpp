// serialize.cpp
#include "bruhat/serialize.hpp"

#include <algorithm>

#include "bruhat/errors.hpp"

namespace bruhat {

using nlohmann::json;

namespace {

json pair_list(const CoxeterMatrix& m, const std::vector<std::pair<Word, Word>>& pairs) {
  json out = json::array();
  for (const auto& [x, y] : pairs) out.push_back({m.format(x), m.format(y)});
  return out;
}

json id_list(const GroupBall& b, const std::vector<ElemId>& ids) {
  json out = json::array();
  for (ElemId x : ids) out.push_back(b.format(x));
  return out;
}

Word canonical(const CoxeterMatrix& m, const json& w) {
  if (!w.is_string()) throw InvalidInput("expected a word string, got " + w.dump());
  return reduce(m, m.parse(w.get<std::string>())).canonical;
}

}  // namespace

json family_to_json(const CoxeterMatrix& m, const MatchingFamily& f) {
  json out = json::object();
  for (const DihedralMatching& d : f.members) out[m.name(d.s)] = pair_list(m, d.pairs);
  return out;
}

json matching_to_json(const PartialMatching& phi) {
  const GroupBall& b = phi.ball();
  const CoxeterMatrix& m = b.matrix();
  json pairs = json::array();
  for (ElemId x : phi.lifted()) pairs.push_back({b.format(x), b.format(phi.partner(x))});
  return json{{"base", m.name(phi.base())},
              {"family", family_to_json(m, phi.family())},
              {"domain_bound", phi.reliable_bound()},
              {"pairs", pairs},
              {"excluded", id_list(b, phi.excluded())},
              {"unresolved", id_list(b, phi.unresolved())}};
}

MatchingFamily family_from_json(const CoxeterMatrix& m, const json& j, int bound) {
  if (!j.is_object() || !j.contains("base") || !j.contains("family"))
    throw InvalidInput("family JSON needs \"base\" and \"family\"");
  const Generator a = m.generator(j.at("base").get<std::string>());
  const json& fam = j.at("family");
  if (!fam.is_object()) throw InvalidInput("\"family\" must be an object keyed by generator name");
  for (const auto& [key, _] : fam.items())
    if (m.generator(key) == a) throw InvalidInput("family has a member for the base generator " + key);
  MatchingFamily out{a, {}};
  for (Generator s : m.generators()) {
    if (s == a) continue;
    const std::string& name = m.name(s);
    if (!fam.contains(name)) throw InvalidInput("family has no member for " + name);
    const json& list = fam.at(name);
    if (!list.is_array()) throw InvalidInput("member " + name + " must be a list of pairs");
    GeneratorSet as;
    as.insert(a);
    as.insert(s);
    DihedralMatching d{a, s, m.m(a, s), m.m(a, s) == kInfinity ? bound : m.m(a, s), {}};
    for (const json& p : list) {
      if (!p.is_array() || p.size() != 2) throw InvalidInput("member " + name + ": pairs are [x, y]");
      Word x = canonical(m, p[0]), y = canonical(m, p[1]);
      if (!support(x).subset_of(as) || !support(y).subset_of(as))
        throw InvalidInput("member " + name + ": pair leaves the dihedral subgroup");
      if (y.size() < x.size()) std::swap(x, y);
      d.pairs.emplace_back(std::move(x), std::move(y));
    }
    std::sort(d.pairs.begin(), d.pairs.end(), [](const auto& p, const auto& q) {
      return Element{p.first} < Element{q.first};
    });
    auto all = enumerate_dihedral_matchings(a, s, d.m, bound);
    if (std::find(all.begin(), all.end(), d) == all.end())
      throw InvalidInput("member " + name + " is not a special matching of <" + m.name(a) + "," + name +
                         "> with phi(e) = " + m.name(a));
    out.members.push_back(std::move(d));
  }
  return out;
}

CandidateMap candidate_from_json(const GroupBall& b, const json& j) {
  if (!j.is_object() || !j.contains("pairs") || !j.at("pairs").is_array())
    throw InvalidInput("candidate JSON needs a \"pairs\" list");
  std::vector<ElemId> map(b.size(), kNone), members;
  auto set = [&](ElemId x, ElemId y) {
    if (map[x] != kNone && map[x] != y) throw InvalidInput(b.format(x) + " is paired twice");
    map[x] = y;
    members.push_back(x);
  };
  for (const json& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2) throw InvalidInput("pairs are [x, y]");
    ElemId x = b.id(canonical(b.matrix(), p[0])), y = b.id(canonical(b.matrix(), p[1]));
    set(x, y);
    set(y, x);
  }
  return {std::move(map), LowerSet(b, std::move(members))};
}

json check_to_json(const GroupBall& b, const MatchingCheck& c) {
  json out{{"ok", c.ok}};
  if (!c.ok) {
    out["clause"] = c.clause;
    out["element"] = c.element == kNone ? json(nullptr) : json(b.format(c.element));
    out["message"] = c.message;
  }
  return out;
}

}  // namespace bruhat
