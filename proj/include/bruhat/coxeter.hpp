// coxeter.hpp
// Coxeter matrices, words and exact reduction by braid moves.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace bruhat {

inline constexpr int kInfinity = 0;  // bond order encoding for m_st = ∞
inline constexpr int kMaxRank = 32;

struct Generator {
  std::uint8_t index = 0;

  constexpr Generator() = default;
  constexpr explicit Generator(int i) : index(static_cast<std::uint8_t>(i)) {}
  constexpr int value() const { return index; }
  auto operator<=>(const Generator&) const = default;
};

// Set of generators as a bitmask; rank is at most kMaxRank.
class GeneratorSet {
 public:
  constexpr GeneratorSet() = default;
  constexpr explicit GeneratorSet(std::uint32_t bits) : bits_(bits) {}
  static GeneratorSet all(int rank);

  bool contains(Generator s) const { return (bits_ >> s.index) & 1u; }
  void insert(Generator s) { bits_ |= 1u << s.index; }
  void erase(Generator s) { bits_ &= ~(1u << s.index); }
  bool empty() const { return bits_ == 0; }
  int size() const;
  std::uint32_t bits() const { return bits_; }
  bool subset_of(GeneratorSet o) const { return (bits_ & ~o.bits_) == 0; }
  GeneratorSet operator|(GeneratorSet o) const { return GeneratorSet(bits_ | o.bits_); }
  GeneratorSet operator&(GeneratorSet o) const { return GeneratorSet(bits_ & o.bits_); }
  std::vector<Generator> members() const;
  auto operator<=>(const GeneratorSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

using Word = std::vector<Generator>;

std::string word_key(const Word& w);  // compact byte string, usable as a hash key
Word word_from_key(std::string_view key);
Word word_from_indices(std::initializer_list<int> indices);

class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  // entries is row-major rank×rank, kInfinity for ∞. Throws InvalidInput.
  CoxeterMatrix(int rank, std::vector<int> entries, std::vector<std::string> names = {});

  static CoxeterMatrix dihedral(int m);
  static CoxeterMatrix from_rows(const std::vector<std::vector<int>>& rows,
                                 std::vector<std::string> names = {});
  static CoxeterMatrix from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int rank() const { return rank_; }
  int m(Generator s, Generator t) const { return entries_[s.index * rank_ + t.index]; }
  bool finite(Generator s, Generator t) const { return m(s, t) != kInfinity; }
  const std::string& name(Generator s) const { return names_[s.index]; }
  const std::vector<std::string>& names() const { return names_; }
  Generator generator(std::string_view name) const;  // throws InvalidInput
  std::vector<Generator> generators() const;

  // Largest finite m_st over s ≠ t; 1 for rank ≤ 1 or when all bonds are ∞.
  int max_finite_bond() const;
  bool simply_laced() const;  // all bonds in {2,3}
  // Same group with generators renamed: new generator i is old perm[i].
  CoxeterMatrix permuted(const std::vector<int>& perm) const;
  // Stable 64-bit FNV-1a hash of the bond orders (names excluded).
  std::uint64_t hash() const;

  std::string format(const Word& w) const;      // "s0.s1", "e" for the empty word
  Word parse(std::string_view text) const;      // inverse of format

  bool operator==(const CoxeterMatrix& o) const { return rank_ == o.rank_ && entries_ == o.entries_; }

 private:
  int rank_ = 0;
  std::vector<int> entries_;
  std::vector<std::string> names_;
};

struct Element {
  Word canonical;

  std::size_t len() const { return canonical.size(); }
  bool operator==(const Element&) const = default;
  auto operator<=>(const Element& o) const {
    if (len() != o.len()) return len() <=> o.len();
    return canonical <=> o.canonical;
  }
};

inline constexpr std::size_t kDefaultBudget = 200000;

// Canonical form by braid-closure exploration interleaved with deletion of
// adjacent equal letters. Throws BudgetExceeded past `budget` explored words.
Element reduce(const CoxeterMatrix& m, const Word& w, std::size_t budget = kDefaultBudget);

enum class Side { Left, Right };

Element multiply(const CoxeterMatrix& m, const Element& x, Generator s, Side side,
                 std::size_t budget = kDefaultBudget);

// Alternating word of n letters: prefix form [s,t,n⟩ = stst..., suffix form
// ⟨n,t,s] = ...tsts. Throws InvalidInput when n > m_st.
enum class AltForm { Prefix, Suffix };
Word alternating(Generator s, Generator t, int n, AltForm form);
Element dihedral_word(const CoxeterMatrix& m, Generator s, Generator t, int n, AltForm form);

GeneratorSet support(const Word& w);

}  // namespace bruhat
