#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace commcalc {

/// One run of a generator raised to a nonzero exponent. Generators are 1-based.
struct Letter {
  int generator = 0;
  long exponent = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced element of the free group F_rank, stored run-length.
class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {}
  /// Builds a word from arbitrary runs; the result is freely reduced.
  Word(int rank, const std::vector<Letter>& runs);

  static Word identity(int rank) { return Word(rank); }
  static Word generator(int rank, int index, long exponent = 1);

  int rank() const noexcept { return rank_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  /// Total letter count (sum of |exponent|).
  std::size_t length() const noexcept { return length_; }
  bool isIdentity() const noexcept { return letters_.empty(); }
  /// Exponent sum of each generator, indexed 0..rank-1.
  std::vector<long> exponentSums() const;

  friend bool operator==(const Word& a, const Word& b) {
    return a.rank_ == b.rank_ && a.letters_ == b.letters_;
  }
  friend bool operator<(const Word& a, const Word& b);

 private:
  friend Word multiply(const Word&, const Word&);
  friend Word inverse(const Word&);
  void appendReduced(Letter l);

  int rank_ = 0;
  std::vector<Letter> letters_;
  std::size_t length_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Process-wide cap on Word::length(); exceeding it throws ResourceError.
std::size_t wordLetterLimit();
void setWordLetterLimit(std::size_t limit);

Word multiply(const Word& a, const Word& b);
Word multiply(std::initializer_list<Word> factors);
Word inverse(const Word& w);
/// h^g = g^-1 h g
Word conjugate(const Word& h, const Word& g);
/// [g,h] = g^-1 h^-1 g h
Word commutator(const Word& g, const Word& h);
/// [a1,...,an] = [[...[a1,a2],...],an]; a single entry is returned as is.
Word leftNormed(const std::vector<Word>& entries);
Word power(const Word& w, long exponent);
/// Exact equality in the free group.
bool verifyIdentity(const Word& lhs, const Word& rhs);

/// Parses the word grammar; generators beyond `rank` raise RankError.
Word parseWord(std::string_view text, int rank);
/// Letters a..z when rank <= 26, otherwise x1, x2, ...; identity prints as "1".
std::string format(const Word& w);
std::string generatorName(int rank, int index);

/// All reduced words of letter length <= maxLength in F_rank, ordered by
/// length then lexicographically on (generator, sign).
std::vector<Word> enumerateWords(int rank, int maxLength);

}  // namespace commcalc
