#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace primus {

/// One run a_gen^exp of a word; gen is 1-based.
struct Syllable {
  int gen = 0;
  std::int64_t exp = 0;
  auto operator<=>(const Syllable&) const = default;
};

/// Freely reduced element of the free group F_r on a1..ar, stored as
/// exponent-merged syllables. Adjacent syllables never share a generator and
/// no exponent is zero; the empty sequence is the identity.
class Word {
 public:
  explicit Word(int rank = 1);
  /// Reduces `syllables` (merging runs, dropping zero exponents).
  Word(int rank, std::span<const Syllable> syllables);

  static Word identity(int rank) { return Word(rank); }
  static Word generator(int rank, int gen, std::int64_t exp = 1);

  int rank() const { return rank_; }
  std::span<const Syllable> syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }
  /// Number of letters, i.e. the sum of |exp|.
  std::int64_t length() const;

  /// Indices with nonzero exponent in the reduced form, ascending.
  std::vector<int> support() const;
  bool supported_in(int l) const;

  Word inverse() const;
  /// Same element viewed in F_rank; throws if a generator beyond `rank` occurs.
  Word with_rank(int rank) const;

  /// Net exponent of generator `gen`.
  std::int64_t exponent_sum(int gen) const;

  std::string to_string() const;

  /// Canonical total order: letter length, then syllables lexicographically.
  std::strong_ordering operator<=>(const Word& other) const;
  bool operator==(const Word& other) const = default;

 private:
  void push(Syllable s);

  int rank_;
  std::vector<Syllable> syllables_;

  friend Word operator*(const Word& u, const Word& v);
};

/// Free-group product; throws RankMismatch.
Word operator*(const Word& u, const Word& v);

/// [u,v] = u^-1 v^-1 u v.
Word commutator(const Word& u, const Word& v);

Word power(const Word& u, std::int64_t e);

/// Parses the word grammar
///   word := term { ("*" | WS) term } ; term := gen ["^" int] | "[" word "," word "]" | "(" word ")"
/// with gen := "a" posint. As extensions, "1" denotes the identity and "^int"
/// may follow bracketed terms. Throws ParseError with the offending position.
Word parse_word(std::string_view text, int rank);

/// Every reduced word of letter length <= max_length, shortest first.
std::vector<Word> all_reduced_words(int rank, int max_length);

std::vector<Word> parse_words(std::span<const std::string> texts, int rank);

}  // namespace primus
