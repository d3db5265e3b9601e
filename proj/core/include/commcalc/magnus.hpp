#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "commcalc/integer.hpp"
#include "commcalc/words.hpp"

namespace commcalc {

/// Sequence of 1-based variable indices; the empty monomial is the constant.
using Monomial = std::vector<int>;

/// Noncommutative integer polynomial in X1..Xm keeping only degrees < D.
/// Coefficients are stored densely by degree; within a degree, monomials are
/// indexed as base-m numbers with the first variable most significant, so
/// index order is lexicographic order.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(int rank, int bound);

  static TruncatedSeries zero(int rank, int bound) { return TruncatedSeries(rank, bound); }
  static TruncatedSeries one(int rank, int bound);
  static TruncatedSeries variable(int rank, int bound, int index);

  int rank() const noexcept { return rank_; }
  int bound() const noexcept { return bound_; }

  Integer coefficient(const Monomial& mono) const;
  void setCoefficient(const Monomial& mono, const Integer& value);

  /// Number of monomials of degree d.
  std::size_t stratumSize(int d) const;
  /// Coefficients of degree d in lexicographic index order.
  std::vector<Integer> homogeneousPart(int d) const;
  void setHomogeneousPart(int d, const std::vector<Integer>& coeffs);
  const Integer& at(int d, std::size_t index) const { return coeffs_[offset(d) + index]; }
  Integer& at(int d, std::size_t index) { return coeffs_[offset(d) + index]; }

  const Integer& constantTerm() const { return coeffs_[0]; }
  bool isZero() const;
  /// Lowest degree >= 1 carrying a nonzero coefficient, or nullopt.
  std::optional<int> lowestPositiveDegree() const;
  /// Copy with all degrees >= newBound dropped.
  TruncatedSeries truncated(int newBound) const;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  std::size_t hash() const;

  std::size_t offset(int d) const { return offsets_[static_cast<std::size_t>(d)]; }
  static Monomial monomialAt(int rank, int degree, std::size_t index);
  static std::size_t indexOf(int rank, const Monomial& mono);

 private:
  int rank_ = 0;
  int bound_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Integer> coeffs_;
};

struct TruncatedSeriesHash {
  std::size_t operator()(const TruncatedSeries& s) const { return s.hash(); }
};

/// Magnus image of w under m_i -> 1 + X_i, truncated below degree D.
TruncatedSeries expand(const Word& w, int bound);

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries subtract(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b);
/// Two-sided inverse of a series with constant term +1 or -1.
TruncatedSeries invertUnit(const TruncatedSeries& s);
/// s^k for a series with constant term 1 and any integer k.
TruncatedSeries unitPower(const TruncatedSeries& s, const Integer& k);

/// Minimum number of occurrences of X_var over the nonzero terms of S - 1;
/// nullopt when S = 1.
std::optional<int> minDegreeIn(const TruncatedSeries& s, int var);

/// Terms sorted by (degree, lexicographic monomial), e.g. "1 + X1X2 - X2X1".
std::string format(const TruncatedSeries& s);

}  // namespace commcalc
