#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "commcalc/hall.hpp"
#include "commcalc/integer.hpp"
#include "commcalc/magnus.hpp"
#include "commcalc/words.hpp"

namespace commcalc {

/// Multi-index (i_1 ... i_s i) with 1-based entries.
using MultiIndex = std::vector<int>;

/// Gcd convention for the modulus of a mu-bar invariant.
enum class DeltaMode {
  /// Order-preserving proper subsequences of length >= 2.
  Ordered,
  /// Subsequences closed under cyclic permutation.
  Milnor
};

std::string toString(DeltaMode mode);
DeltaMode parseDeltaMode(std::string_view text);

/// Longitude words of an m-component link modulo gamma_q.
class LinkPresentation {
 public:
  LinkPresentation(int m, int q, std::vector<Word> longitudes);

  int m() const noexcept { return m_; }
  int q() const noexcept { return q_; }
  const std::vector<Word>& longitudes() const noexcept { return longitudes_; }
  const Word& longitude(int i) const { return longitudes_.at(static_cast<std::size_t>(i - 1)); }
  /// Magnus expansion of longitude i truncated below q.
  const TruncatedSeries& expansion(int i) const { return expansions_.at(static_cast<std::size_t>(i - 1)); }

 private:
  int m_;
  int q_;
  std::vector<Word> longitudes_;
  std::vector<TruncatedSeries> expansions_;
};

/// Lines "m=<int>", "q=<int>", "l<i>=<word>"; '#' starts a comment.
LinkPresentation parsePresentation(std::string_view text);
LinkPresentation loadPresentation(const std::string& path);

struct MuValue {
  MultiIndex index;
  Integer rawMu;
  Integer modulus;
  Integer residue;
};

/// Coefficient of X_{i_1}..X_{i_s} in M(l_i); no reduction.
Integer rawMu(const LinkPresentation& lp, const MultiIndex& idx);
Integer muModulus(const LinkPresentation& lp, const MultiIndex& idx, DeltaMode mode = DeltaMode::Ordered);
MuValue mu(const LinkPresentation& lp, const MultiIndex& idx, DeltaMode mode = DeltaMode::Ordered);
/// All multi-indices of the given length over 1..m in lexicographic order.
std::vector<MultiIndex> multiIndices(int m, int length);
/// Canonical representative of x modulo modulus (x itself when modulus is 0).
Integer reduceResidue(const Integer& x, const Integer& modulus);

/// Residues mu-bar(I^sigma i) obtained from the commutator numbers of l_i.
/// `multiset` lists I with repetition; keys are the orderings sigma.
std::map<MultiIndex, Integer> muFromE(const LinkPresentation& lp, const MultiIndex& multiset, int i,
                                      HallOrder order = HallOrder::Standard, DeltaMode mode = DeltaMode::Ordered);

/// Commutator numbers E(I^c; l_i) of multidegree I keyed by basic commutator
/// ordinal; nullopt when some modulus Delta(I^sigma i) is nonzero.
std::optional<std::map<int, Integer>> eFromMu(const LinkPresentation& lp, const MultiIndex& multiset, int i,
                                              HallOrder order = HallOrder::Standard,
                                              DeltaMode mode = DeltaMode::Ordered);

/// Commutator numbers of l_i of multidegree I read from its normal form.
std::map<int, Integer> commutatorNumbers(const LinkPresentation& lp, const MultiIndex& multiset, int i,
                                         HallOrder order = HallOrder::Standard);

struct StarReport {
  int n = 0;
  struct Entry {
    int ordinal;
    std::string commutator;
    Integer sum;
  };
  std::vector<Entry> entries;
  bool pass = true;
};

/// Sums over each weight n+1 basic commutator K of E(K; [m_j, J]) E(J; l_j).
StarReport checkRelationsStar(const LinkPresentation& lp, int n, HallOrder order = HallOrder::Standard);

struct CyclicReport {
  int length = 0;
  DeltaMode mode = DeltaMode::Ordered;
  struct Failure {
    MultiIndex index;
    MultiIndex rotation;
    Integer value;
    Integer rotatedValue;
  };
  std::vector<Failure> failures;
  bool pass = true;
  /// Outcome of checkRelationsStar(length - 1) on the same presentation.
  bool starPass = true;
  bool equivalent() const noexcept { return pass == starPass; }
};

CyclicReport checkCyclicSymmetry(const LinkPresentation& lp, int length, DeltaMode mode = DeltaMode::Ordered);

/// m N_{length-1} - N_length.
Integer countIndependentMu(int m, int length);

enum class MuClass { Extractable, NotExtractable, InvariantOnly, Outside };
std::string toString(MuClass c);
MuClass classifyMu(const MultiIndex& idx, int k);
/// Parses "111112122" or "1,1,2" into a multi-index.
MultiIndex parseMultiIndex(std::string_view text);
std::string formatMultiIndex(const MultiIndex& idx);

struct GkPresentation {
  int m = 0;
  int k = 0;
  std::vector<Word> peripheral;
  std::vector<std::string> cRelators;
  std::vector<Word> cWords;
  std::vector<std::string> dRelators;
  std::vector<Word> dWords;
  std::string text() const;
};

GkPresentation emitGkPresentation(const LinkPresentation& lp, int k);

}  // namespace commcalc
