#include "commcalc/hall.hpp"

#include <algorithm>
#include <numeric>

#include "commcalc/errors.hpp"
#include "commcalc/limits.hpp"

namespace commcalc {

HallBasis::HallBasis(int rank, int maxWeight, HallOrder order, std::size_t sizeLimit)
    : rank_(rank), maxWeight_(maxWeight), order_(order) {
  if (rank < 1) throw DomainError("rank must be positive");
  if (maxWeight < 1) throw DomainError("maximal weight must be positive");
  if (sizeLimit == 0) sizeLimit = defaultLimits().maxBasisSize;
  Integer expected = 0;
  for (int n = 1; n <= maxWeight; ++n) expected += wittCount(rank, n);
  if (expected > sizeLimit)
    throw ResourceError("Hall basis of size " + expected.str() + " exceeds limit " + std::to_string(sizeLimit));

  strataStart_.push_back(0);
  for (int g = 1; g <= rank; ++g) {
    BasicCommutator c;
    c.weight = 1;
    c.generator = g;
    c.multidegree.assign(static_cast<std::size_t>(rank), 0);
    c.multidegree[static_cast<std::size_t>(g - 1)] = 1;
    elements_.push_back(c);
  }
  auto finishStratum = [this](std::size_t begin) {
    if (order_ == HallOrder::Reversed) std::reverse(elements_.begin() + static_cast<std::ptrdiff_t>(begin), elements_.end());
    for (std::size_t i = begin; i < elements_.size(); ++i) elements_[i].ordinal = static_cast<int>(i);
    strataStart_.push_back(static_cast<int>(elements_.size()));
  };
  finishStratum(0);

  for (int w = 2; w <= maxWeight; ++w) {
    const std::size_t begin = elements_.size();
    for (std::size_t v = 0; v < begin; ++v) {
      for (std::size_t u = v + 1; u < begin; ++u) {
        const auto& cu = elements_[u];
        const auto& cv = elements_[v];
        if (cu.weight + cv.weight != w) continue;
        if (cu.right >= 0 && cu.right > static_cast<int>(v)) continue;
        BasicCommutator c;
        c.weight = w;
        c.left = static_cast<int>(u);
        c.right = static_cast<int>(v);
        c.multidegree.resize(static_cast<std::size_t>(rank));
        for (std::size_t i = 0; i < c.multidegree.size(); ++i) c.multidegree[i] = cu.multidegree[i] + cv.multidegree[i];
        elements_.push_back(std::move(c));
      }
    }
    finishStratum(begin);
  }
  rhoCache_.resize(elements_.size());
  wordCache_.resize(elements_.size());
}

std::pair<int, int> HallBasis::stratum(int weight) const {
  if (weight < 1 || weight > maxWeight_) throw DomainError("weight outside basis range");
  return {strataStart_[static_cast<std::size_t>(weight - 1)], strataStart_[static_cast<std::size_t>(weight)]};
}

const std::vector<Integer>& HallBasis::rho(int ordinal) const {
  {
    std::lock_guard<std::mutex> lock(*cacheMutex_);
    if (rhoCache_[static_cast<std::size_t>(ordinal)]) return *rhoCache_[static_cast<std::size_t>(ordinal)];
  }
  const auto& c = elements_[static_cast<std::size_t>(ordinal)];
  std::vector<Integer> result;
  if (c.weight == 1) {
    result.assign(static_cast<std::size_t>(rank_), Integer(0));
    result[static_cast<std::size_t>(c.generator - 1)] = 1;
  } else {
    const auto& ru = rho(c.left);
    const auto& rv = rho(c.right);
    result.assign(ru.size() * rv.size(), Integer(0));
    for (std::size_t i = 0; i < ru.size(); ++i) {
      if (ru[i] == 0) continue;
      for (std::size_t j = 0; j < rv.size(); ++j) {
        if (rv[j] == 0) continue;
        Integer p = ru[i] * rv[j];
        result[i * rv.size() + j] += p;
        result[j * ru.size() + i] -= p;
      }
    }
  }
  std::lock_guard<std::mutex> lock(*cacheMutex_);
  auto& slot = rhoCache_[static_cast<std::size_t>(ordinal)];
  if (!slot) slot = std::make_unique<std::vector<Integer>>(std::move(result));
  return *slot;
}

TruncatedSeries HallBasis::rhoSeries(int ordinal, int bound) const {
  const int w = elements_[static_cast<std::size_t>(ordinal)].weight;
  if (w >= bound) throw DomainError("weight not below truncation bound");
  TruncatedSeries s(rank_, bound);
  s.setHomogeneousPart(w, rho(ordinal));
  return s;
}

Word HallBasis::asWord(int ordinal) const {
  {
    std::lock_guard<std::mutex> lock(*cacheMutex_);
    if (wordCache_[static_cast<std::size_t>(ordinal)]) return *wordCache_[static_cast<std::size_t>(ordinal)];
  }
  const auto& c = elements_[static_cast<std::size_t>(ordinal)];
  Word w = c.weight == 1 ? Word::generator(rank_, c.generator) : commutator(asWord(c.left), asWord(c.right));
  std::lock_guard<std::mutex> lock(*cacheMutex_);
  auto& slot = wordCache_[static_cast<std::size_t>(ordinal)];
  if (!slot) slot = std::make_unique<Word>(w);
  return w;
}

void HallBasis::formatInto(int ordinal, std::string& out) const {
  const auto& c = elements_[static_cast<std::size_t>(ordinal)];
  if (c.weight == 1) {
    out += generatorName(rank_, c.generator);
    return;
  }
  // Flatten the left spine into one left-normed bracket.
  std::vector<int> spine;
  int cur = ordinal;
  while (elements_[static_cast<std::size_t>(cur)].weight > 1) {
    spine.push_back(elements_[static_cast<std::size_t>(cur)].right);
    cur = elements_[static_cast<std::size_t>(cur)].left;
  }
  out += '[';
  formatInto(cur, out);
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
    out += ',';
    formatInto(*it, out);
  }
  out += ']';
}

std::string HallBasis::format(int ordinal) const {
  std::string out;
  formatInto(ordinal, out);
  return out;
}

int moebius(int n) {
  if (n < 1) throw DomainError("moebius argument must be positive");
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

Integer wittCount(int m, int n) {
  if (m < 1 || n < 1) throw DomainError("wittCount requires m, n >= 1");
  Integer sum = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int mu = moebius(d);
    if (mu == 0) continue;
    Integer term = boost::multiprecision::pow(Integer(m), static_cast<unsigned>(n / d));
    sum += mu * term;
  }
  return sum / n;
}

Integer wittMultidegree(const std::vector<int>& counts) {
  int n = 0;
  int g = 0;
  for (int c : counts) {
    if (c < 0) throw DomainError("occurrence counts must be nonnegative");
    n += c;
    g = std::gcd(g, c);
  }
  if (n < 1) throw DomainError("total weight must be positive");
  auto factorial = [](int k) {
    Integer f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  Integer sum = 0;
  for (int d = 1; d <= g; ++d) {
    if (g % d != 0) continue;
    int mu = moebius(d);
    if (mu == 0) continue;
    Integer term = factorial(n / d);
    for (int c : counts) term /= factorial(c / d);
    sum += mu * term;
  }
  return sum / n;
}

}  // namespace commcalc
