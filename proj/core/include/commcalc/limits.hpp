#pragma once

#include <atomic>
#include <cstddef>

namespace commcalc {

/// Resource caps shared by the computational modules. All have documented
/// defaults; the CLI loads overrides from a JSON config file.
struct Limits {
  /// Maximum number of letters (sum of |exponent|) in any Word.
  std::size_t maxWordLetters = 1'000'000;
  /// Maximum number of basic commutators in a generated Hall basis.
  std::size_t maxBasisSize = 20'000;
  /// Maximum number of candidate words produced by one instantiation.
  std::size_t maxInstantiatedWords = 2'000'000;
  /// Cap on the truncation class q by rank; 0 disables the cap.
  int maxClassRank2 = 7;
  int maxClassRank3 = 5;
  int maxClassRank4 = 4;
  int maxClassOther = 3;

  int maxClass(int rank) const {
    if (rank <= 2) return maxClassRank2;
    if (rank == 3) return maxClassRank3;
    if (rank == 4) return maxClassRank4;
    return maxClassOther;
  }
};

/// Process-wide limits used when no explicit Limits object is passed.
Limits defaultLimits();
void setDefaultLimits(const Limits& limits);

}  // namespace commcalc
