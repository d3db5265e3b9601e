#pragma once

#include <random>
#include <vector>

#include "commcalc/words.hpp"

namespace commcalc::testing {

/// Uniform reduced word of exact letter length `length`.
inline Word randomWord(std::mt19937_64& rng, int rank, int length) {
  std::vector<Letter> letters;
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sign(0, 1);
  while (static_cast<int>(letters.size()) < length) {
    Letter l{gen(rng), sign(rng) ? 1L : -1L};
    if (!letters.empty() && letters.back().generator == l.generator && letters.back().exponent != l.exponent) continue;
    letters.push_back(l);
  }
  return Word(rank, letters);
}

inline Word randomWordUpTo(std::mt19937_64& rng, int rank, int maxLength) {
  std::uniform_int_distribution<int> len(0, maxLength);
  return randomWord(rng, rank, len(rng));
}

}  // namespace commcalc::testing
