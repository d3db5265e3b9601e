#include "commcalc/words.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include <boost/functional/hash.hpp>

#include "commcalc/errors.hpp"
#include "expression.hpp"

namespace commcalc {
namespace {

std::atomic<std::size_t> g_letterLimit{1'000'000};

void checkLength(std::size_t length) {
  if (length > g_letterLimit.load(std::memory_order_relaxed))
    throw ResourceError("word exceeds letter limit of " + std::to_string(g_letterLimit.load()));
}

void requireSameRank(const Word& a, const Word& b) {
  if (a.rank() != b.rank())
    throw RankError("rank mismatch: " + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()));
}

}  // namespace

std::size_t wordLetterLimit() { return g_letterLimit.load(); }
void setWordLetterLimit(std::size_t limit) { g_letterLimit.store(limit); }

Word::Word(int rank, const std::vector<Letter>& runs) : rank_(rank) {
  for (const auto& l : runs) {
    if (l.generator < 1 || l.generator > rank)
      throw RankError("generator " + std::to_string(l.generator) + " outside 1.." + std::to_string(rank));
    appendReduced(l);
  }
  checkLength(length_);
}

Word Word::generator(int rank, int index, long exponent) {
  return Word(rank, {Letter{index, exponent}});
}

void Word::appendReduced(Letter l) {
  if (l.exponent == 0) return;
  if (!letters_.empty() && letters_.back().generator == l.generator) {
    Letter& last = letters_.back();
    length_ -= static_cast<std::size_t>(std::labs(last.exponent));
    last.exponent += l.exponent;
    if (last.exponent == 0) {
      letters_.pop_back();
    } else {
      length_ += static_cast<std::size_t>(std::labs(last.exponent));
    }
    return;
  }
  letters_.push_back(l);
  length_ += static_cast<std::size_t>(std::labs(l.exponent));
}

std::vector<long> Word::exponentSums() const {
  std::vector<long> sums(static_cast<std::size_t>(rank_), 0);
  for (const auto& l : letters_) sums[static_cast<std::size_t>(l.generator - 1)] += l.exponent;
  return sums;
}

bool operator<(const Word& a, const Word& b) {
  if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
  return std::lexicographical_compare(
      a.letters_.begin(), a.letters_.end(), b.letters_.begin(), b.letters_.end(),
      [](const Letter& x, const Letter& y) {
        return x.generator != y.generator ? x.generator < y.generator : x.exponent < y.exponent;
      });
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t seed = static_cast<std::size_t>(w.rank());
  for (const auto& l : w.letters()) {
    boost::hash_combine(seed, l.generator);
    boost::hash_combine(seed, l.exponent);
  }
  return seed;
}

Word multiply(const Word& a, const Word& b) {
  requireSameRank(a, b);
  Word result = a;
  // Cancel the overlap between the tail of a and the head of b run by run.
  std::size_t i = 0;
  while (i < b.letters_.size()) {
    const Letter& l = b.letters_[i];
    if (result.letters_.empty() || result.letters_.back().generator != l.generator) break;
    result.appendReduced(l);
    ++i;
    if (!result.letters_.empty() && result.letters_.back().generator == l.generator) break;
  }
  for (; i < b.letters_.size(); ++i) {
    result.letters_.push_back(b.letters_[i]);
    result.length_ += static_cast<std::size_t>(std::labs(b.letters_[i].exponent));
  }
  checkLength(result.length_);
  return result;
}

Word multiply(std::initializer_list<Word> factors) {
  if (factors.size() == 0) throw DomainError("empty product has no rank");
  Word result = Word::identity(factors.begin()->rank());
  for (const auto& f : factors) result = multiply(result, f);
  return result;
}

Word inverse(const Word& w) {
  Word result(w.rank_);
  result.letters_.reserve(w.letters_.size());
  for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it)
    result.letters_.push_back(Letter{it->generator, -it->exponent});
  result.length_ = w.length_;
  return result;
}

Word conjugate(const Word& h, const Word& g) {
  requireSameRank(h, g);
  return multiply(multiply(inverse(g), h), g);
}

Word commutator(const Word& g, const Word& h) {
  requireSameRank(g, h);
  return multiply(multiply(inverse(g), inverse(h)), multiply(g, h));
}

Word leftNormed(const std::vector<Word>& entries) {
  if (entries.empty()) throw DomainError("empty bracket");
  Word result = entries.front();
  for (std::size_t i = 1; i < entries.size(); ++i) result = commutator(result, entries[i]);
  return result;
}

Word power(const Word& w, long exponent) {
  if (w.isIdentity() || exponent == 0) return Word::identity(w.rank());
  if (w.letters().size() == 1) {
    const Letter& l = w.letters().front();
    return Word(w.rank(), {Letter{l.generator, l.exponent * exponent}});
  }
  Word base = exponent < 0 ? inverse(w) : w;
  unsigned long n = static_cast<unsigned long>(std::labs(exponent));
  Word result = Word::identity(w.rank());
  while (n > 0) {
    if (n & 1UL) result = multiply(result, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

bool verifyIdentity(const Word& lhs, const Word& rhs) { return lhs == rhs; }

std::string generatorName(int rank, int index) {
  if (rank <= 26) return std::string(1, static_cast<char>('a' + index - 1));
  return "x" + std::to_string(index);
}

Word parseWord(std::string_view text, int rank) {
  if (rank < 1) throw DomainError("rank must be positive");
  auto expr = detail::parseExpression(text);
  auto resolve = [rank](const std::string& name, std::size_t position) -> Word {
    int index = 0;
    if (name.size() > 1 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      index = std::atoi(name.c_str() + 1);
    } else if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'z') {
      index = name[0] - 'a' + 1;
    } else {
      throw ParseError("unknown generator '" + name + "'", position);
    }
    if (index < 1 || index > rank)
      throw RankError("generator '" + name + "' outside rank " + std::to_string(rank));
    return Word::generator(rank, index);
  };
  return detail::evaluate(*expr, rank, resolve);
}

std::string format(const Word& w) {
  if (w.isIdentity()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first) out << '*';
    first = false;
    out << generatorName(w.rank(), l.generator);
    if (l.exponent != 1) out << '^' << l.exponent;
  }
  return out.str();
}

std::vector<Word> enumerateWords(int rank, int maxLength) {
  std::vector<Word> result{Word::identity(rank)};
  std::vector<std::vector<Letter>> frontier{{}};
  for (int len = 1; len <= maxLength; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : frontier) {
      for (int g = 1; g <= rank; ++g) {
        for (long s : {1L, -1L}) {
          if (!w.empty() && w.back().generator == g && (w.back().exponent > 0) != (s > 0)) continue;
          auto extended = w;
          extended.push_back(Letter{g, s});
          next.push_back(std::move(extended));
        }
      }
    }
    for (const auto& w : next) result.emplace_back(rank, w);
    frontier = std::move(next);
  }
  return result;
}

}  // namespace commcalc
