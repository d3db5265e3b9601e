#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "commcalc/integer.hpp"
#include "commcalc/magnus.hpp"
#include "commcalc/nilpotent.hpp"
#include "commcalc/words.hpp"

namespace commcalc {

/// Sifted generating system of a subgroup of F_m / gamma_q. Elements are
/// represented by their Magnus series truncated below q. Pivots are keyed by
/// the ordinal of their leading basic commutator and have a positive leading
/// exponent.
class SubgroupLattice {
 public:
  struct Pivot {
    int ordinal = 0;
    int weight = 0;
    Integer lead;
    /// Weight-`weight` coordinates of the element.
    std::vector<Integer> row;
    TruncatedSeries element;
  };

  /// `conjugators` are elements the subgroup is closed under conjugation by;
  /// for a normal closure these are the free generators.
  SubgroupLattice(std::shared_ptr<const NilpotentContext> ctx, std::vector<TruncatedSeries> conjugators = {});

  const NilpotentContext& context() const noexcept { return *ctx_; }
  std::shared_ptr<const NilpotentContext> contextPtr() const noexcept { return ctx_; }
  bool normalClosed() const noexcept { return normal_; }
  const std::map<int, Pivot>& pivots() const noexcept { return pivots_; }
  const std::vector<TruncatedSeries>& conjugators() const noexcept { return conjugators_; }

  void insert(const Word& w);
  void insert(const TruncatedSeries& s);
  void insert(const std::vector<Word>& words);
  void insert(const std::vector<TruncatedSeries>& elements);
  /// Adds conjugation closure under further elements.
  void addConjugators(const std::vector<TruncatedSeries>& conjugators);

  bool contains(const Word& w) const;
  bool contains(const TruncatedSeries& s) const;
  /// Residual after reducing against the pivots; identity iff contained.
  TruncatedSeries sift(TruncatedSeries s) const;

  /// HNF of the image of the subgroup meet gamma_n in gamma_n / gamma_{n+1}.
  IntMatrix sectionLattice(int n) const;
  /// Index of the section lattice in Z^{N_n}, or 0 for deficient rank.
  Integer sectionIndex(int n) const;

  std::vector<TruncatedSeries> pivotElements() const;

 private:
  void process(TruncatedSeries s);
  void enqueueClosure(int ordinal);
  void drain();
  void sweep();

  std::shared_ptr<const NilpotentContext> ctx_;
  std::vector<TruncatedSeries> conjugators_;
  bool normal_ = false;
  std::map<int, Pivot> pivots_;
  std::vector<TruncatedSeries> queue_;
};

/// Commutator A^-1 B^-1 A B of unit series.
TruncatedSeries seriesCommutator(const TruncatedSeries& a, const TruncatedSeries& b);

/// Free generators as series; the conjugators of a normal closure.
std::vector<TruncatedSeries> generatorSeries(const NilpotentContext& ctx);

SubgroupLattice closeSubgroup(const std::vector<Word>& gens, std::shared_ptr<const NilpotentContext> ctx,
                              bool normal);

/// Subgroup generated by both lattices (closed under the union of their
/// conjugators).
SubgroupLattice joinLattices(const SubgroupLattice& a, const SubgroupLattice& b);

enum class LatticeRelation { Equal, StrictlyFiner, StrictlyCoarser, Incomparable };
std::string toString(LatticeRelation r);

/// StrictlyFiner means lat1 is a proper subgroup of lat2.
LatticeRelation compareLattices(const SubgroupLattice& lat1, const SubgroupLattice& lat2);

/// Zeroes exponents of basic commutators with >= k+2 occurrences of some
/// generator or weight > m(k+1). Requires q > m(k+1).
ExponentVector reduceModMuK(const ExponentVector& e, int k, const NilpotentContext& ctx);

/// Generator families for the subgroups handled by `instantiate`.
struct GeneratorScheme {
  enum class Kind { Gamma, Mu, Mu27, Mu28, Delta, DeltaConj, Epsilon, Nu, Nk, Derived2 };
  Kind kind = Kind::Gamma;
  int parameter = 1;
  /// Component for Nk (1-based); 0 means all components.
  int component = 0;
  /// Maximal reduced length of substituted words; 0 selects the default.
  int length = 0;
  /// Levels 0..conjDepth-1 of iterated normal closures; 0 selects k+1.
  int conjDepth = 0;
  std::vector<long> powers{1, -1, 2, -2};
  std::size_t maxWords = 0;

  /// Parses "gamma:n", "mu:k", "mu27:k", "mu28:k", "delta:k", "delta-conj:k",
  /// "epsilon:n", "nu:n", "nk:k[:i]" or "derived2".
  static GeneratorScheme parse(const std::string& text);
  std::string name() const;
  int effectiveLength(int rank) const;
  int effectiveConjDepth() const;
};

struct Instantiation {
  std::vector<Word> words;
  /// Whether the subgroup is the normal closure of `words`.
  bool normal = true;
};

Instantiation instantiate(const GeneratorScheme& scheme, const NilpotentContext& ctx);

/// Closure of an instantiated scheme.
SubgroupLattice buildScheme(const GeneratorScheme& scheme, std::shared_ptr<const NilpotentContext> ctx);

/// Lattice at the scheme's length together with a stability flag comparing it
/// to the lattice one length lower.
struct StableLattice {
  SubgroupLattice lattice;
  bool stable = false;
  int length = 0;
};
StableLattice buildStable(const GeneratorScheme& scheme, std::shared_ptr<const NilpotentContext> ctx);

/// Image of n-fold Engel values [[v,w],w,...,w] in the weight-(n+1) section,
/// for abelianized v, w in [-box, box]^m.
struct EngelSpan {
  IntMatrix hnf;
  Integer index;
  bool stable = false;
};
EngelSpan engelImageSpan(int n, const NilpotentContext& ctx, int box);

}  // namespace commcalc
