#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "commcalc/hall.hpp"
#include "commcalc/integer.hpp"
#include "commcalc/limits.hpp"
#include "commcalc/magnus.hpp"
#include "commcalc/words.hpp"

namespace commcalc {

/// Exponents indexed by basic commutator ordinal (weights < q).
using ExponentVector = std::vector<Integer>;

/// Free nilpotent group F_m / gamma_q with its Hall basis through weight q-1.
/// Immutable after construction apart from internal caches guarded by locks.
class NilpotentContext {
 public:
  NilpotentContext(int rank, int q, HallOrder order = HallOrder::Standard,
                   const Limits& limits = defaultLimits());
  ~NilpotentContext();
  NilpotentContext(const NilpotentContext&) = delete;
  NilpotentContext& operator=(const NilpotentContext&) = delete;

  int rank() const noexcept { return rank_; }
  int q() const noexcept { return q_; }
  const HallBasis& basis() const noexcept { return *basis_; }
  std::size_t dimension() const noexcept { return basis_->size(); }

  ExponentVector zero() const { return ExponentVector(dimension(), Integer(0)); }

  /// Exponents e with w = prod_c c^e(c) (ascending Hall order) modulo gamma_q.
  ExponentVector normalForm(const Word& w) const;
  /// Same, starting from a unit series truncated below q.
  ExponentVector normalForm(const TruncatedSeries& s) const;
  /// Magnus image of the Hall-ordered product, truncated below q.
  TruncatedSeries series(const ExponentVector& e) const;
  Word evaluate(const ExponentVector& e) const;
  /// Least weight with a nonzero exponent, or q when w lies in gamma_q.
  int weightOf(const Word& w) const;
  ExponentVector multiply(const ExponentVector& a, const ExponentVector& b) const;

  /// Coordinates of a degree-n homogeneous Lie element in the weight-n rho
  /// basis; nullopt if it is not an integral combination.
  std::optional<std::vector<Integer>> solveWeight(int n, const std::vector<Integer>& part) const;

  /// Lowest weight n of S - 1 together with its weight-n coordinates;
  /// nullopt when S = 1 below degree q.
  struct Leading {
    int weight;
    std::vector<Integer> coordinates;
  };
  std::optional<Leading> leading(const TruncatedSeries& s) const;

  /// M(c)^k for basic commutator `ordinal`, truncated below q.
  TruncatedSeries basisPower(int ordinal, const Integer& k) const;

 private:
  struct Solver;
  const Solver& solver(int n) const;

  int rank_;
  int q_;
  std::unique_ptr<HallBasis> basis_;
  struct Caches;
  std::unique_ptr<Caches> caches_;
};

}  // namespace commcalc
