// poset.cpp
#include "bruhat/poset.hpp"

#include <algorithm>
#include <functional>

#include "bruhat/errors.hpp"

namespace bruhat {

std::vector<std::size_t> GradedPoset::level_sizes() const {
  std::vector<std::size_t> out;
  for (int l : level) {
    if (static_cast<std::size_t>(l) >= out.size()) out.resize(l + 1, 0);
    ++out[l];
  }
  return out;
}

int GradedPoset::index_of(ElemId x) const {
  auto it = std::find(elements.begin(), elements.end(), x);
  return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
}

nlohmann::json GradedPoset::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < size(); ++i) {
    nlohmann::json covers = nlohmann::json::array();
    for (int c : up[i]) covers.push_back(labels[c]);
    nodes.push_back({{"id", labels[i]}, {"level", level[i]}, {"covers", covers}});
  }
  return {{"nodes", nodes}};
}

GradedPoset GradedPoset::from_covers(std::vector<std::string> labels, std::vector<int> level,
                                     const std::vector<std::vector<int>>& up) {
  GradedPoset p;
  const std::size_t n = labels.size();
  if (level.size() != n || up.size() != n) throw InvalidInput("poset: inconsistent sizes");
  p.labels = std::move(labels);
  p.level = std::move(level);
  p.up.assign(n, {});
  p.down.assign(n, {});
  int bottoms = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.level[i] == 0) ++bottoms;
    for (int c : up[i]) {
      if (c < 0 || static_cast<std::size_t>(c) >= n || p.level[c] != p.level[i] + 1)
        throw InvalidInput("poset: cover must go up exactly one level");
      p.up[i].push_back(c);
      p.down[c].push_back(static_cast<int>(i));
    }
  }
  if (n > 0 && bottoms != 1) throw InvalidInput("poset: bottom node must be unique");
  return p;
}

LowerSet::LowerSet(const GroupBall& ball, std::vector<ElemId> members)
    : members_(std::move(members)), in_(ball.size(), false) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (ElemId x : members_) in_[x] = true;
}

GradedPoset induced(const GroupBall& ball, const std::vector<ElemId>& carrier) {
  std::vector<ElemId> nodes = carrier;
  std::sort(nodes.begin(), nodes.end());
  GradedPoset p;
  p.elements = nodes;
  std::vector<int> pos(ball.size(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = static_cast<int>(i);
  int base = nodes.empty() ? 0 : ball.len(nodes.front());
  p.up.assign(nodes.size(), {});
  p.down.assign(nodes.size(), {});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    p.labels.push_back(ball.format(nodes[i]));
    p.level.push_back(ball.len(nodes[i]) - base);
    for (ElemId c : ball.coatoms(nodes[i]))
      if (pos[c] >= 0) {
        p.down[i].push_back(pos[c]);
        p.up[pos[c]].push_back(static_cast<int>(i));
      }
  }
  for (auto& u : p.up) std::sort(u.begin(), u.end());
  return p;
}

GradedPoset interval(const GroupBall& ball, ElemId u, ElemId v) {
  if (!ball.leq(u, v))
    throw EmptyInterval("interval [" + ball.format(u) + "," + ball.format(v) + "] is empty");
  std::vector<ElemId> carrier;
  for (ElemId z : ball.lower_interval(v))
    if (ball.leq(u, z)) carrier.push_back(z);
  return induced(ball, carrier);
}

LowerSet lower_closure(const GroupBall& ball, const std::vector<ElemId>& seeds) {
  std::vector<bool> in(ball.size(), false);
  std::vector<ElemId> out;
  for (ElemId s : seeds)
    for (ElemId z : ball.lower_interval(s))
      if (!in[z]) {
        in[z] = true;
        out.push_back(z);
      }
  return LowerSet(ball, std::move(out));
}

namespace {

struct Search {
  const GradedPoset& p1;
  const GradedPoset& p2;
  std::vector<int> order;  // P1 nodes by level
  NodeMap f;
  std::vector<bool> used;
  std::size_t nodes = 0;
  std::size_t cap;
  bool capped = false;

  Search(const GradedPoset& a, const GradedPoset& b, std::size_t node_cap)
      : p1(a), p2(b), f(a.size(), -1), used(b.size(), false), cap(node_cap) {
    order.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a.level[x] < a.level[y]; });
  }

  bool compatible(int x, int y) const {
    if (p1.level[x] != p2.level[y] || p1.up[x].size() != p2.up[y].size() ||
        p1.down[x].size() != p2.down[y].size())
      return false;
    // down covers are already mapped since nodes go by level
    for (int d : p1.down[x]) {
      const auto& dy = p2.down[y];
      if (std::find(dy.begin(), dy.end(), f[d]) == dy.end()) return false;
    }
    return true;
  }

  // Calls visit on each complete map; visit returns false to stop.
  bool run(std::size_t k, const std::function<bool(const NodeMap&)>& visit) {
    if (k == order.size()) return visit(f);
    int x = order[k];
    for (std::size_t y = 0; y < p2.size(); ++y) {
      if (used[y] || !compatible(x, static_cast<int>(y))) continue;
      if (++nodes > cap) {
        capped = true;
        return false;
      }
      f[x] = static_cast<int>(y);
      used[y] = true;
      bool go_on = run(k + 1, visit);
      used[y] = false;
      f[x] = -1;
      if (!go_on) return false;
    }
    return true;
  }
};

bool same_shape(const GradedPoset& p1, const GradedPoset& p2) {
  if (p1.size() != p2.size() || p1.level_sizes() != p2.level_sizes()) return false;
  auto sigs = [](const GradedPoset& p) {
    std::vector<std::tuple<int, std::size_t, std::size_t>> s;
    for (std::size_t i = 0; i < p.size(); ++i) s.emplace_back(p.level[i], p.up[i].size(), p.down[i].size());
    std::sort(s.begin(), s.end());
    return s;
  };
  return sigs(p1) == sigs(p2);
}

}  // namespace

std::optional<NodeMap> poset_isomorphism(const GradedPoset& p1, const GradedPoset& p2) {
  if (!same_shape(p1, p2)) return std::nullopt;
  Search s(p1, p2, static_cast<std::size_t>(-1));
  std::optional<NodeMap> found;
  s.run(0, [&](const NodeMap& f) {
    found = f;
    return false;
  });
  return found;
}

IsomorphismList all_isomorphisms(const GradedPoset& p1, const GradedPoset& p2, std::size_t node_cap) {
  IsomorphismList out;
  if (!same_shape(p1, p2)) return out;
  Search s(p1, p2, node_cap);
  s.run(0, [&](const NodeMap& f) {
    out.maps.push_back(f);
    return true;
  });
  out.exhaustive = !s.capped;
  return out;
}

bool is_isomorphism(const GradedPoset& p1, const GradedPoset& p2, const NodeMap& f) {
  if (p1.size() != p2.size() || f.size() != p1.size()) return false;
  std::vector<bool> hit(p2.size(), false);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] < 0 || static_cast<std::size_t>(f[x]) >= p2.size() || hit[f[x]]) return false;
    hit[f[x]] = true;
    if (p1.level[x] != p2.level[f[x]]) return false;
  }
  for (std::size_t x = 0; x < p1.size(); ++x) {
    std::vector<int> img;
    for (int c : p1.up[x]) img.push_back(f[c]);
    std::vector<int> target = p2.up[f[x]];
    std::sort(img.begin(), img.end());
    std::sort(target.begin(), target.end());
    if (img != target) return false;
  }
  return true;
}

}  // namespace bruhat
