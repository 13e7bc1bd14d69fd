// coxeter.cpp
#include "bruhat/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <optional>
#include <unordered_set>

#include "bruhat/errors.hpp"

namespace bruhat {

GeneratorSet GeneratorSet::all(int rank) {
  return GeneratorSet(rank >= 32 ? 0xffffffffu : ((1u << rank) - 1u));
}

int GeneratorSet::size() const { return std::popcount(bits_); }

std::vector<Generator> GeneratorSet::members() const {
  std::vector<Generator> out;
  for (int i = 0; i < kMaxRank; ++i)
    if ((bits_ >> i) & 1u) out.emplace_back(i);
  return out;
}

std::string word_key(const Word& w) {
  std::string k(w.size(), '\0');
  for (std::size_t i = 0; i < w.size(); ++i) k[i] = static_cast<char>(w[i].index);
  return k;
}

Word word_from_key(std::string_view key) {
  Word w;
  w.reserve(key.size());
  for (char c : key) w.emplace_back(static_cast<unsigned char>(c));
  return w;
}

Word word_from_indices(std::initializer_list<int> indices) {
  Word w;
  for (int i : indices) w.emplace_back(i);
  return w;
}

CoxeterMatrix::CoxeterMatrix(int rank, std::vector<int> entries, std::vector<std::string> names)
    : rank_(rank), entries_(std::move(entries)), names_(std::move(names)) {
  if (rank < 1 || rank > kMaxRank)
    throw InvalidInput("rank must be in [1, " + std::to_string(kMaxRank) + "], got " +
                       std::to_string(rank));
  if (entries_.size() != static_cast<std::size_t>(rank * rank))
    throw InvalidInput("matrix must have rank*rank entries");
  for (int s = 0; s < rank; ++s) {
    for (int t = 0; t < rank; ++t) {
      int v = entries_[s * rank + t];
      std::string where = "m[" + std::to_string(s) + "][" + std::to_string(t) + "]";
      if (s == t && v != 1) throw InvalidInput(where + ": diagonal entries must be 1");
      if (s != t && v != kInfinity && v < 2)
        throw InvalidInput(where + ": off-diagonal entries must be >= 2 or 0 for infinity");
      if (v != entries_[t * rank + s]) throw InvalidInput(where + ": matrix is not symmetric");
    }
  }
  if (names_.empty()) {
    for (int s = 0; s < rank; ++s) names_.push_back("s" + std::to_string(s));
  }
  if (names_.size() != static_cast<std::size_t>(rank))
    throw InvalidInput("names: expected " + std::to_string(rank) + " entries");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || n == "e" || n.find('.') != std::string::npos)
      throw InvalidInput("names: invalid generator name '" + n + "' (empty, 'e' or contains '.')");
    if (!seen.insert(n).second) throw InvalidInput("names: duplicate generator name '" + n + "'");
  }
}

CoxeterMatrix CoxeterMatrix::dihedral(int m) { return CoxeterMatrix(2, {1, m, m, 1}); }

CoxeterMatrix CoxeterMatrix::from_rows(const std::vector<std::vector<int>>& rows,
                                       std::vector<std::string> names) {
  std::vector<int> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw InvalidInput("matrix rows must all have length rank");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return CoxeterMatrix(static_cast<int>(rows.size()), std::move(flat), std::move(names));
}

CoxeterMatrix CoxeterMatrix::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("matrix: expected a JSON object");
  if (!j.contains("m") || !j["m"].is_array()) throw InvalidInput("field 'm': missing or not an array");
  const auto& m = j["m"];
  int rank = static_cast<int>(m.size());
  if (j.contains("rank")) {
    if (!j["rank"].is_number_integer()) throw InvalidInput("field 'rank': expected an integer");
    if (j["rank"].get<int>() != rank)
      throw InvalidInput("field 'rank': " + std::to_string(j["rank"].get<int>()) +
                         " does not match the " + std::to_string(rank) + " rows of 'm'");
  }
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < rank; ++i) {
    if (!m[i].is_array() || static_cast<int>(m[i].size()) != rank)
      throw InvalidInput("field 'm[" + std::to_string(i) + "]': expected an array of " +
                         std::to_string(rank) + " integers");
    std::vector<int> row;
    for (int k = 0; k < rank; ++k) {
      if (!m[i][k].is_number_integer())
        throw InvalidInput("field 'm[" + std::to_string(i) + "][" + std::to_string(k) +
                           "]': expected an integer");
      row.push_back(m[i][k].get<int>());
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::string> names;
  if (j.contains("names")) {
    if (!j["names"].is_array()) throw InvalidInput("field 'names': expected an array of strings");
    for (const auto& n : j["names"]) {
      if (!n.is_string()) throw InvalidInput("field 'names': expected an array of strings");
      names.push_back(n.get<std::string>());
    }
  }
  return from_rows(rows, std::move(names));
}

nlohmann::json CoxeterMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int s = 0; s < rank_; ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (int t = 0; t < rank_; ++t) row.push_back(entries_[s * rank_ + t]);
    rows.push_back(row);
  }
  return {{"rank", rank_}, {"m", rows}, {"names", names_}};
}

Generator CoxeterMatrix::generator(std::string_view name) const {
  for (int s = 0; s < rank_; ++s)
    if (names_[s] == name) return Generator(s);
  throw InvalidInput("unknown generator '" + std::string(name) + "'");
}

std::vector<Generator> CoxeterMatrix::generators() const {
  std::vector<Generator> out;
  for (int s = 0; s < rank_; ++s) out.emplace_back(s);
  return out;
}

int CoxeterMatrix::max_finite_bond() const {
  int best = 1;
  for (int s = 0; s < rank_; ++s)
    for (int t = s + 1; t < rank_; ++t) best = std::max(best, entries_[s * rank_ + t]);
  return best;
}

bool CoxeterMatrix::simply_laced() const {
  for (int s = 0; s < rank_; ++s)
    for (int t = s + 1; t < rank_; ++t) {
      int v = entries_[s * rank_ + t];
      if (v != 2 && v != 3) return false;
    }
  return true;
}

CoxeterMatrix CoxeterMatrix::permuted(const std::vector<int>& perm) const {
  if (perm.size() != static_cast<std::size_t>(rank_)) throw InvalidInput("permutation size mismatch");
  std::vector<int> e(entries_.size());
  std::vector<std::string> n(rank_);
  for (int i = 0; i < rank_; ++i) {
    n[i] = names_[perm[i]];
    for (int k = 0; k < rank_; ++k) e[i * rank_ + k] = entries_[perm[i] * rank_ + perm[k]];
  }
  return CoxeterMatrix(rank_, std::move(e), std::move(n));
}

std::uint64_t CoxeterMatrix::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(rank_));
  for (int v : entries_) mix(static_cast<std::uint64_t>(v));
  return h;
}

std::string CoxeterMatrix::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += names_.at(w[i].index);
  }
  return out;
}

Word CoxeterMatrix::parse(std::string_view text) const {
  Word w;
  if (text == "e" || text.empty()) return w;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = text.find('.', start);
    std::string_view part = text.substr(start, dot == std::string_view::npos ? text.npos : dot - start);
    w.push_back(generator(part));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return w;
}

namespace {

// Position of the first adjacent equal pair, or npos.
std::size_t find_square(const std::string& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1]) return i;
  return std::string::npos;
}

}  // namespace

Element reduce(const CoxeterMatrix& m, const Word& w, std::size_t budget) {
  for (Generator g : w)
    if (g.index >= m.rank()) throw InvalidInput("word letter out of range for this matrix");
  std::string cur = word_key(w);
  std::size_t explored = 0;
  while (true) {
    std::unordered_set<std::string> seen{cur};
    std::deque<std::string> queue{cur};
    std::optional<std::string> shortened;
    std::string best = cur;
    while (!queue.empty() && !shortened) {
      std::string v = std::move(queue.front());
      queue.pop_front();
      if (++explored > budget)
        throw BudgetExceeded("word too long for exact reduction at budget " + std::to_string(budget));
      if (auto i = find_square(v); i != std::string::npos) {
        shortened = v.substr(0, i) + v.substr(i + 2);
        break;
      }
      best = std::min(best, v);
      // every braid move s t s ... (m letters) -> t s t ...
      for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        Generator s(static_cast<unsigned char>(v[i])), t(static_cast<unsigned char>(v[i + 1]));
        int mst = m.m(s, t);
        if (mst == kInfinity || i + mst > v.size()) continue;
        bool alt = true;
        for (int k = 2; k < mst && alt; ++k) alt = v[i + k] == v[i + (k % 2)];
        if (!alt) continue;
        std::string u = v;
        for (int k = 0; k < mst; ++k) u[i + k] = v[i + ((k + 1) % 2)];
        if (seen.insert(u).second) queue.push_back(std::move(u));
      }
    }
    if (!shortened) return Element{word_from_key(best)};
    cur = std::move(*shortened);
  }
}

Element multiply(const CoxeterMatrix& m, const Element& x, Generator s, Side side, std::size_t budget) {
  Word w;
  w.reserve(x.len() + 1);
  if (side == Side::Left) w.push_back(s);
  w.insert(w.end(), x.canonical.begin(), x.canonical.end());
  if (side == Side::Right) w.push_back(s);
  return reduce(m, w, budget);
}

Word alternating(Generator s, Generator t, int n, AltForm form) {
  Word w(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    // prefix form starts with s; suffix form ends with s
    int from_start = form == AltForm::Prefix ? i : (n - 1 - i);
    w[i] = from_start % 2 == 0 ? s : t;
  }
  return w;
}

Element dihedral_word(const CoxeterMatrix& m, Generator s, Generator t, int n, AltForm form) {
  if (n < 0) throw InvalidInput("dihedral_word: negative length");
  if (n >= 2 && s == t) throw InvalidInput("dihedral_word: s and t must differ");
  if (n >= 2 && m.finite(s, t) && n > m.m(s, t))
    throw InvalidInput("dihedral_word: n exceeds m_st, word would not be reduced");
  return reduce(m, alternating(s, t, n, form));
}

GeneratorSet support(const Word& w) {
  GeneratorSet out;
  for (Generator g : w) out.insert(g);
  return out;
}

}  // namespace bruhat
