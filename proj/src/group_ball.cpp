// group_ball.cpp
#include "bruhat/group_ball.hpp"

#include <algorithm>
#include <numeric>

#include "bruhat/errors.hpp"

namespace bruhat {

namespace {

std::string id_key(const std::vector<ElemId>& ids) {
  std::string k(ids.size() * sizeof(ElemId), '\0');
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t b = 0; b < sizeof(ElemId); ++b)
      k[i * sizeof(ElemId) + b] = static_cast<char>((ids[i] >> (8 * b)) & 0xff);
  return k;
}

}  // namespace

BallPtr GroupBall::build(const CoxeterMatrix& m, int bound) {
  if (bound < 0) throw InvalidInput("ball bound must be non-negative");
  std::shared_ptr<GroupBall> ball(new GroupBall(m, bound));
  ball->build_levels();
  ball->build_inverses();
  ball->build_coatoms();
  ball->build_intervals();
  return ball;
}

// New elements z = x·s are detected together with all their right descents:
// t ≠ s lies in D_R(xs) iff m_st < ∞ and x = u·(alternating word of length
// m_st−1 ending in t) with lengths adding up, because two right descents s,t
// force a reduced expression ending in M_st.
void GroupBall::build_levels() {
  const int n = rank();
  words_.push_back({});
  rdesc_.push_back(0);
  right_.assign(n, kNone);
  levels_.push_back({0});

  for (int k = 0; k < bound_; ++k) {
    const std::vector<ElemId> cur = levels_[k];
    const ElemId first_new = static_cast<ElemId>(words_.size());
    for (ElemId x : cur) {
      for (int si = 0; si < n; ++si) {
        Generator s(si);
        if ((rdesc_[x] >> si) & 1u) continue;
        if (right_[x * n + si] != kNone) continue;
        const ElemId z = static_cast<ElemId>(words_.size());
        right_.resize(right_.size() + n, kNone);
        right_[x * n + si] = z;
        right_[z * n + si] = x;
        std::uint32_t rd = 1u << si;
        Word best = words_[x];
        best.push_back(s);
        for (int ti = 0; ti < n; ++ti) {
          Generator t(ti);
          if (ti == si || !matrix_.finite(s, t)) continue;
          const int mst = matrix_.m(s, t);
          ElemId y = x;
          bool chain = true;
          for (int i = 0; i < mst - 1 && chain; ++i) {
            Generator c = i % 2 == 0 ? t : s;
            if (!((rdesc_[y] >> c.index) & 1u)) chain = false;
            else y = right_[y * n + c.index];
          }
          if (!chain) continue;
          ElemId yt = y;
          for (Generator c : alternating(s, t, mst - 1, AltForm::Suffix)) yt = right_[yt * n + c.index];
          if (yt == kNone || words_[yt].size() != static_cast<std::size_t>(k) ||
              right_[yt * n + ti] != kNone)
            throw InternalError("ball construction: inconsistent dihedral link");
          right_[yt * n + ti] = z;
          right_[z * n + ti] = yt;
          rd |= 1u << ti;
          Word cand = words_[yt];
          cand.push_back(t);
          best = std::min(best, cand);
        }
        words_.push_back(std::move(best));
        rdesc_.push_back(rd);
      }
    }
    const ElemId end = static_cast<ElemId>(words_.size());
    if (first_new == end) break;

    // renumber the new level in canonical-word order
    std::vector<ElemId> order(end - first_new);
    std::iota(order.begin(), order.end(), first_new);
    std::sort(order.begin(), order.end(), [&](ElemId a, ElemId b) { return words_[a] < words_[b]; });
    std::vector<ElemId> remap(end - first_new);
    for (ElemId i = 0; i < order.size(); ++i) remap[order[i] - first_new] = first_new + i;
    std::vector<Word> w2(order.size());
    std::vector<std::uint32_t> d2(order.size());
    std::vector<ElemId> r2(order.size() * n);
    for (ElemId i = 0; i < order.size(); ++i) {
      w2[i] = std::move(words_[order[i]]);
      d2[i] = rdesc_[order[i]];
      std::copy_n(right_.begin() + order[i] * n, n, r2.begin() + i * n);
    }
    for (ElemId i = 0; i < order.size(); ++i) {
      words_[first_new + i] = std::move(w2[i]);
      rdesc_[first_new + i] = d2[i];
      std::copy_n(r2.begin() + i * n, n, right_.begin() + (first_new + i) * n);
    }
    for (ElemId x : cur)
      for (int si = 0; si < n; ++si) {
        ElemId& v = right_[x * n + si];
        if (v != kNone && v >= first_new) v = remap[v - first_new];
      }
    std::vector<ElemId> lvl(order.size());
    std::iota(lvl.begin(), lvl.end(), first_new);
    levels_.push_back(std::move(lvl));
  }

  // complete iff nothing of length bound+1 exists
  const std::uint32_t all = GeneratorSet::all(n).bits();
  complete_ = true;
  if (static_cast<int>(levels_.size()) == bound_ + 1)
    for (ElemId x : levels_.back())
      if (rdesc_[x] != all) complete_ = false;

  for (ElemId x = 0; x < words_.size(); ++x) by_word_.emplace(word_key(words_[x]), x);
}

void GroupBall::build_inverses() {
  const int n = rank();
  inverse_.assign(size(), kNone);
  for (ElemId x = 0; x < size(); ++x) {
    Word r(words_[x].rbegin(), words_[x].rend());
    auto inv = evaluate(r);
    if (!inv) throw InternalError("ball construction: inverse outside ball");
    inverse_[x] = *inv;
  }
  left_.assign(size() * n, kNone);
  ldesc_.assign(size(), 0);
  for (ElemId x = 0; x < size(); ++x) {
    ldesc_[x] = rdesc_[inverse_[x]];
    for (int s = 0; s < n; ++s) {
      ElemId v = right_[inverse_[x] * n + s];
      left_[x * n + s] = v == kNone ? kNone : inverse_[v];
    }
  }
}

void GroupBall::build_coatoms() {
  coatoms_.assign(size(), {});
  covers_.assign(size(), {});
  for (ElemId y = 0; y < size(); ++y) {
    const Word& w = words_[y];
    std::vector<ElemId>& c = coatoms_[y];
    for (std::size_t i = 0; i < w.size(); ++i) {
      Word d = w;
      d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
      auto v = evaluate(d);
      if (v && words_[*v].size() + 1 == w.size()) c.push_back(*v);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (ElemId x : c) covers_[x].push_back(y);
    by_coatoms_[id_key(c)].push_back(y);
  }
}

// [e,y] = [e,sy] ∪ s[e,sy] for s in D_L(y): the lifting form of the descent
// recursion, filled in increasing length.
void GroupBall::build_intervals() {
  stride_ = (size() + 63) / 64;
  lower_.assign(size() * stride_, 0);
  lower_[0] |= 1u;
  for (ElemId y = 1; y < size(); ++y) {
    Generator s = GeneratorSet(ldesc_[y]).members().front();
    ElemId sy = mul(y, s, Side::Left);
    std::uint64_t* dst = &lower_[static_cast<std::size_t>(y) * stride_];
    const std::uint64_t* src = &lower_[static_cast<std::size_t>(sy) * stride_];
    std::copy_n(src, stride_, dst);
    for (std::size_t wi = 0; wi < stride_; ++wi) {
      std::uint64_t bits = src[wi];
      while (bits) {
        int b = __builtin_ctzll(bits);
        bits &= bits - 1;
        ElemId z = static_cast<ElemId>(wi * 64 + b);
        ElemId sz = mul(z, s, Side::Left);
        dst[sz / 64] |= std::uint64_t{1} << (sz % 64);
      }
    }
  }
}

std::optional<ElemId> GroupBall::evaluate(const Word& w) const {
  ElemId x = 0;
  for (Generator g : w) {
    if (g.index >= rank()) throw InvalidInput("word letter out of range for this matrix");
    x = mul(x, g, Side::Right);
    if (x == kNone) return std::nullopt;
  }
  return x;
}

ElemId GroupBall::id(const Element& e) const {
  auto it = by_word_.find(word_key(e.canonical));
  if (it != by_word_.end()) return it->second;
  if (static_cast<int>(e.len()) > bound_)
    throw BallTooSmall("element " + matrix_.format(e.canonical) + " exceeds the ball bound " +
                       std::to_string(bound_));
  throw InvalidInput("word " + matrix_.format(e.canonical) + " is not in canonical form");
}

ElemId GroupBall::id(const Word& w) const {
  auto x = evaluate(w);
  if (!x) throw BallTooSmall("word " + matrix_.format(w) + " leaves the ball of bound " +
                             std::to_string(bound_));
  return *x;
}

bool GroupBall::leq_recursive(ElemId x, ElemId y) const {
  while (true) {
    if (len(x) > len(y)) return false;
    if (y == 0) return x == 0;
    Generator s = descents(y, Side::Left).members().front();
    if (descents(x, Side::Left).contains(s)) x = mul(x, s, Side::Left);
    y = mul(y, s, Side::Left);
  }
}

std::vector<ElemId> GroupBall::with_coatoms(const std::vector<ElemId>& coat) const {
  auto it = by_coatoms_.find(id_key(coat));
  if (it == by_coatoms_.end()) return {};
  return it->second;
}

std::vector<ElemId> GroupBall::lower_interval(ElemId y) const {
  std::vector<ElemId> out;
  const std::uint64_t* row = &lower_[static_cast<std::size_t>(y) * stride_];
  for (std::size_t wi = 0; wi < stride_; ++wi) {
    std::uint64_t bits = row[wi];
    while (bits) {
      int b = __builtin_ctzll(bits);
      bits &= bits - 1;
      out.push_back(static_cast<ElemId>(wi * 64 + b));
    }
  }
  return out;
}

const std::vector<ElemId>& GroupBall::level(int k) const {
  static const std::vector<ElemId> empty;
  if (k < 0 || k >= static_cast<int>(levels_.size())) return empty;
  return levels_[k];
}

std::vector<std::size_t> GroupBall::level_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels_) out.push_back(l.size());
  return out;
}

std::optional<ElemId> GroupBall::longest_dihedral(Generator s, Generator t) const {
  if (!matrix_.finite(s, t)) return std::nullopt;
  int mst = matrix_.m(s, t);
  if (mst > bound_)
    throw BallTooSmall("M_" + matrix_.name(s) + matrix_.name(t) + " has length " +
                       std::to_string(mst) + " beyond the ball bound " + std::to_string(bound_));
  return id(alternating(s, t, mst, AltForm::Prefix));
}

bool is_full(const GroupBall& ball, ElemId w, GeneratorSet J) {
  auto gens = J.members();
  bool full = true;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t k = i + 1; k < gens.size(); ++k) {
      auto M = ball.longest_dihedral(gens[i], gens[k]);
      if (!M || !ball.leq(*M, w)) full = false;
    }
  return full;
}

ElemId parabolic_max(const GroupBall& ball, ElemId w, GeneratorSet J) {
  std::vector<ElemId> inJ;
  for (ElemId u : ball.lower_interval(w))
    if (ball.support(u).subset_of(J)) inJ.push_back(u);
  // ids are sorted by length, so a maximum must be among the longest
  std::vector<ElemId> maxima;
  for (ElemId u : inJ) {
    bool top = std::all_of(inJ.begin(), inJ.end(), [&](ElemId v) { return ball.leq(v, u); });
    if (top) maxima.push_back(u);
  }
  if (maxima.size() != 1) throw InternalError("parabolic_max: [e,w] ∩ <J> has no unique maximum");
  return maxima.front();
}

FlattenResult flatten(const GroupBall& ball, ElemId w) {
  const int n = ball.rank();
  std::vector<int> entries(n * n, 1);
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      GeneratorSet J;
      J.insert(Generator(s));
      J.insert(Generator(t));
      int l = ball.len(parabolic_max(ball, w, J));
      entries[s * n + t] = entries[t * n + s] = std::max(l, 2);
    }
  FlattenResult out{CoxeterMatrix(n, std::move(entries), ball.matrix().names()), nullptr, kNone, {}};
  out.ball = GroupBall::build(out.matrix, ball.len(w));
  for (ElemId u : ball.lower_interval(w)) {
    auto v = out.ball->evaluate(ball.word(u));
    if (!v || out.ball->len(*v) != ball.len(u))
      throw InternalError("flatten: reduced word of W is not reduced in W'");
    out.map.emplace_back(u, *v);
  }
  out.image = out.map.back().second;
  return out;
}

}  // namespace bruhat
