#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "commcalc/integer.hpp"
#include "commcalc/magnus.hpp"
#include "commcalc/words.hpp"

namespace commcalc {

/// Ordering of basic commutators within a weight. `Reversed` reverses each
/// weight stratum before the next weight is generated; both yield Hall bases.
enum class HallOrder { Standard, Reversed };

struct BasicCommutator {
  int ordinal = 0;
  int weight = 0;
  /// 1-based generator index for weight 1, otherwise 0.
  int generator = 0;
  /// Ordinals of the bracket [left, right]; -1 for generators.
  int left = -1;
  int right = -1;
  std::vector<int> multidegree;
};

class HallBasis {
 public:
  HallBasis(int rank, int maxWeight, HallOrder order = HallOrder::Standard, std::size_t sizeLimit = 0);

  int rank() const noexcept { return rank_; }
  int maxWeight() const noexcept { return maxWeight_; }
  HallOrder order() const noexcept { return order_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const BasicCommutator& operator[](std::size_t ordinal) const { return elements_[ordinal]; }
  const std::vector<BasicCommutator>& elements() const noexcept { return elements_; }

  /// Half-open ordinal range [first, second) of the weight-w stratum.
  std::pair<int, int> stratum(int weight) const;

  /// Leading Lie part of element `ordinal`: homogeneous of degree weight,
  /// dense over monomials of that degree in lexicographic index order.
  const std::vector<Integer>& rho(int ordinal) const;
  /// rho as a series truncated below `bound` (requires weight < bound).
  TruncatedSeries rhoSeries(int ordinal, int bound) const;

  Word asWord(int ordinal) const;
  /// Left-normed notation, e.g. "[b,a,a,[b,a]]".
  std::string format(int ordinal) const;

 private:
  void formatInto(int ordinal, std::string& out) const;

  int rank_;
  int maxWeight_;
  HallOrder order_;
  std::vector<BasicCommutator> elements_;
  std::vector<int> strataStart_;
  mutable std::vector<std::unique_ptr<std::vector<Integer>>> rhoCache_;
  mutable std::vector<std::unique_ptr<Word>> wordCache_;
  mutable std::unique_ptr<std::mutex> cacheMutex_ = std::make_unique<std::mutex>();
};

/// Number of basic commutators of weight n on m generators.
Integer wittCount(int m, int n);
/// Number of basic commutators with the given occurrence counts.
Integer wittMultidegree(const std::vector<int>& counts);
/// Moebius function.
int moebius(int n);

}  // namespace commcalc
