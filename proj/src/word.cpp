#include "primus/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>

#include "primus/error.hpp"

namespace primus {

Word::Word(int rank) : rank_(rank) {
  if (rank < 1) throw DomainError("word rank must be positive");
}

Word::Word(int rank, std::span<const Syllable> syllables) : Word(rank) {
  for (const auto& s : syllables) {
    if (s.gen < 1 || s.gen > rank)
      throw DomainError("generator a" + std::to_string(s.gen) + " out of range 1.." +
                        std::to_string(rank));
    push(s);
  }
}

Word Word::generator(int rank, int gen, std::int64_t exp) {
  const Syllable s{gen, exp};
  return Word(rank, std::span<const Syllable>(&s, 1));
}

void Word::push(Syllable s) {
  if (s.exp == 0) return;
  if (!syllables_.empty() && syllables_.back().gen == s.gen) {
    syllables_.back().exp += s.exp;
    if (syllables_.back().exp == 0) syllables_.pop_back();
    return;
  }
  syllables_.push_back(s);
}

std::int64_t Word::length() const {
  std::int64_t n = 0;
  for (const auto& s : syllables_) n += s.exp < 0 ? -s.exp : s.exp;
  return n;
}

std::vector<int> Word::support() const {
  std::vector<int> out;
  for (const auto& s : syllables_) out.push_back(s.gen);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Word::supported_in(int l) const {
  return std::all_of(syllables_.begin(), syllables_.end(),
                     [l](const Syllable& s) { return s.gen <= l; });
}

Word Word::inverse() const {
  Word w(rank_);
  w.syllables_.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    w.syllables_.push_back({it->gen, -it->exp});
  return w;
}

Word Word::with_rank(int rank) const {
  if (!supported_in(rank))
    throw DomainError("word " + to_string() + " involves generators beyond a" +
                      std::to_string(rank));
  Word w(rank);
  w.syllables_ = syllables_;
  return w;
}

std::int64_t Word::exponent_sum(int gen) const {
  std::int64_t e = 0;
  for (const auto& s : syllables_)
    if (s.gen == gen) e += s.exp;
  return e;
}

std::string Word::to_string() const {
  if (syllables_.empty()) return "1";
  std::string out;
  for (const auto& s : syllables_) {
    if (!out.empty()) out += ' ';
    out += 'a';
    out += std::to_string(s.gen);
    if (s.exp != 1) {
      out += '^';
      out += std::to_string(s.exp);
    }
  }
  return out;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  if (auto c = rank_ <=> other.rank_; c != 0) return c;
  if (auto c = length() <=> other.length(); c != 0) return c;
  return std::lexicographical_compare_three_way(syllables_.begin(), syllables_.end(),
                                                other.syllables_.begin(),
                                                other.syllables_.end());
}

Word operator*(const Word& u, const Word& v) {
  if (u.rank_ != v.rank_)
    throw RankMismatch("word product: rank " + std::to_string(u.rank_) + " vs " +
                       std::to_string(v.rank_));
  Word w = u;
  w.syllables_.reserve(u.syllables_.size() + v.syllables_.size());
  for (const auto& s : v.syllables_) w.push(s);
  return w;
}

Word commutator(const Word& u, const Word& v) { return u.inverse() * v.inverse() * u * v; }

Word power(const Word& u, std::int64_t e) {
  if (u.syllables().size() == 1)
    return Word::generator(u.rank(), u.syllables()[0].gen, u.syllables()[0].exp * e);
  Word base = e < 0 ? u.inverse() : u;
  Word out = Word::identity(u.rank());
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) out = out * base;
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, int rank) : text_(text), rank_(rank) {}

  Word parse() {
    Word w = word();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_term_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == 'a' || c == '[' || c == '(' || c == '1';
  }

  Word word() {
    Word w = term();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        w = w * term();
      } else if (at_term_start()) {
        w = w * term();
      } else {
        return w;
      }
    }
  }

  std::int64_t integer(bool allow_sign) {
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      pos_ = start;
      fail("expected integer");
    }
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) fail("integer overflow");
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return negative ? -v : v;
  }

  Word maybe_power(Word base) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return power(base, integer(true));
    }
    return base;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Word term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected term");
    const char c = text_[pos_];
    if (c == 'a') {
      const std::size_t start = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected generator index");
      const std::int64_t gen = integer(false);
      if (gen < 1 || gen > rank_) {
        pos_ = start;
        fail("generator a" + std::to_string(gen) + " out of range 1.." + std::to_string(rank_));
      }
      return maybe_power(Word::generator(rank_, static_cast<int>(gen)));
    }
    if (c == '1') {
      ++pos_;
      return maybe_power(Word::identity(rank_));
    }
    if (c == '[') {
      ++pos_;
      Word u = word();
      expect(',');
      Word v = word();
      expect(']');
      return maybe_power(commutator(u, v));
    }
    if (c == '(') {
      ++pos_;
      Word u = word();
      expect(')');
      return maybe_power(u);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int rank_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, int rank) {
  if (rank < 1) throw DomainError("rank must be positive");
  return WordParser(text, rank).parse();
}

std::vector<Word> all_reduced_words(int rank, int max_length) {
  std::vector<Word> out{Word::identity(rank)};
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int g = 1; g <= rank; ++g)
        for (int e : {1, -1}) {
          const Word w = out[i] * Word::generator(rank, g, e);
          if (w.length() == len) out.push_back(w);
        }
    begin = end;
  }
  return out;
}

std::vector<Word> parse_words(std::span<const std::string> texts, int rank) {
  std::vector<Word> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_word(t, rank));
  return out;
}

}  // namespace primus
