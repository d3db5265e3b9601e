#include "commcalc/nilpotent.hpp"

#include <limits>

#include "commcalc/errors.hpp"

namespace commcalc {

struct NilpotentContext::Solver {
  int weight = 0;
  int first = 0;
  std::size_t count = 0;
  std::vector<std::size_t> columns;
  /// Scaled inverse: A^{-1} = inverseScaled / denominator.
  IntMatrix inverseScaled;
  Integer denominator = 1;
};

struct NilpotentContext::Caches {
  std::vector<Solver> solvers;
  /// powersT[c][j-1] = (M(c) - 1)^j, nonzero powers only.
  std::vector<std::vector<TruncatedSeries>> powersT;
};

NilpotentContext::~NilpotentContext() = default;

NilpotentContext::NilpotentContext(int rank, int q, HallOrder order, const Limits& limits)
    : rank_(rank), q_(q) {
  if (rank < 1) throw DomainError("rank must be positive");
  if (q < 2) throw DomainError("nilpotency truncation q must be at least 2");
  const int cap = limits.maxClass(rank);
  if (cap > 0 && q > cap)
    throw ResourceError("q = " + std::to_string(q) + " exceeds the configured cap " + std::to_string(cap) +
                        " for rank " + std::to_string(rank));
  basis_ = std::make_unique<HallBasis>(rank, q - 1, order, limits.maxBasisSize);
  caches_ = std::make_unique<Caches>();

  for (int n = 1; n < q; ++n) {
    Solver s;
    s.weight = n;
    auto [first, last] = basis_->stratum(n);
    s.first = first;
    s.count = static_cast<std::size_t>(last - first);
    const std::size_t cols = basis_->rho(first).size();
    // Greedy choice of independent columns by rational elimination.
    std::vector<std::vector<Rational>> reduced;
    std::vector<std::size_t> pivotRow;
    for (std::size_t col = 0; col < cols && s.columns.size() < s.count; ++col) {
      std::vector<Rational> v(s.count);
      bool nonzero = false;
      for (std::size_t r = 0; r < s.count; ++r) {
        v[r] = Rational(basis_->rho(first + static_cast<int>(r))[col]);
        nonzero = nonzero || v[r] != 0;
      }
      if (!nonzero) continue;
      for (std::size_t k = 0; k < reduced.size(); ++k) {
        const Rational f = v[pivotRow[k]];
        if (f == 0) continue;
        for (std::size_t r = 0; r < s.count; ++r) v[r] -= f * reduced[k][r];
      }
      std::size_t p = s.count;
      for (std::size_t r = 0; r < s.count; ++r)
        if (v[r] != 0) {
          p = r;
          break;
        }
      if (p == s.count) continue;
      const Rational inv = 1 / v[p];
      for (auto& x : v) x *= inv;
      reduced.push_back(std::move(v));
      pivotRow.push_back(p);
      s.columns.push_back(col);
    }
    if (s.columns.size() != s.count) throw InternalError("rho images of weight " + std::to_string(n) + " are dependent");
    // Invert A = R[:, columns] by Gauss-Jordan over the rationals.
    const std::size_t N = s.count;
    std::vector<std::vector<Rational>> a(N, std::vector<Rational>(2 * N));
    for (std::size_t r = 0; r < N; ++r) {
      for (std::size_t c = 0; c < N; ++c) a[r][c] = Rational(basis_->rho(first + static_cast<int>(r))[s.columns[c]]);
      a[r][N + r] = 1;
    }
    for (std::size_t c = 0; c < N; ++c) {
      std::size_t p = c;
      while (p < N && a[p][c] == 0) ++p;
      if (p == N) throw InternalError("singular column selection");
      std::swap(a[p], a[c]);
      const Rational inv = 1 / a[c][c];
      for (auto& x : a[c]) x *= inv;
      for (std::size_t r = 0; r < N; ++r) {
        if (r == c || a[r][c] == 0) continue;
        const Rational f = a[r][c];
        for (std::size_t k = 0; k < 2 * N; ++k) a[r][k] -= f * a[c][k];
      }
    }
    Integer den = 1;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) {
        const Integer d = boost::multiprecision::denominator(a[r][N + c]);
        den = den / gcd(den, d) * d;
      }
    s.denominator = den;
    s.inverseScaled.assign(N, std::vector<Integer>(N));
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) {
        const Rational& x = a[r][N + c];
        s.inverseScaled[r][c] = boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x));
      }
    caches_->solvers.push_back(std::move(s));
  }

  caches_->powersT.resize(basis_->size());
  for (std::size_t c = 0; c < basis_->size(); ++c) {
    TruncatedSeries t = expand(basis_->asWord(static_cast<int>(c)), q);
    t.at(0, 0) = 0;
    TruncatedSeries term = t;
    const int w = (*basis_)[c].weight;
    for (int j = 1; j * w < q; ++j) {
      caches_->powersT[c].push_back(term);
      term = commcalc::multiply(term, t);
    }
  }
}

const NilpotentContext::Solver& NilpotentContext::solver(int n) const {
  if (n < 1 || n >= q_) throw DomainError("weight outside 1..q-1");
  return caches_->solvers[static_cast<std::size_t>(n - 1)];
}

std::optional<std::vector<Integer>> NilpotentContext::solveWeight(int n, const std::vector<Integer>& part) const {
  const Solver& s = solver(n);
  const std::size_t N = s.count;
  std::vector<Integer> e(N, Integer(0));
  for (std::size_t c = 0; c < N; ++c) {
    const Integer& pc = part[s.columns[c]];
    if (pc == 0) continue;
    for (std::size_t r = 0; r < N; ++r) {
      // e = p_cols * A^{-1}: e_r = sum_c p_c * inv[c][r]
      if (s.inverseScaled[c][r] != 0) e[r] += pc * s.inverseScaled[c][r];
    }
  }
  for (auto& x : e) {
    if (x % s.denominator != 0) return std::nullopt;
    x /= s.denominator;
  }
  // Full consistency check e * R == part.
  std::vector<Integer> check(part.size(), Integer(0));
  for (std::size_t r = 0; r < N; ++r) {
    if (e[r] == 0) continue;
    const auto& row = basis_->rho(s.first + static_cast<int>(r));
    for (std::size_t k = 0; k < row.size(); ++k)
      if (row[k] != 0) check[k] += e[r] * row[k];
  }
  if (check != part) return std::nullopt;
  return e;
}

TruncatedSeries NilpotentContext::basisPower(int ordinal, const Integer& k) const {
  TruncatedSeries result = TruncatedSeries::one(rank_, q_);
  if (k == 0) return result;
  const auto& powers = caches_->powersT[static_cast<std::size_t>(ordinal)];
  for (std::size_t j = 0; j < powers.size(); ++j) {
    const Integer coeff = binomial(k, static_cast<unsigned>(j + 1));
    if (coeff == 0) continue;
    const TruncatedSeries& t = powers[j];
    for (int d = 1; d < q_; ++d)
      for (std::size_t i = 0; i < t.stratumSize(d); ++i)
        if (t.at(d, i) != 0) result.at(d, i) += coeff * t.at(d, i);
  }
  return result;
}

std::optional<NilpotentContext::Leading> NilpotentContext::leading(const TruncatedSeries& s) const {
  if (s.rank() != rank_ || s.bound() != q_) throw DomainError("series does not match the context");
  if (s.constantTerm() != 1) throw DomainError("series is not a group element");
  auto n = s.lowestPositiveDegree();
  if (!n) return std::nullopt;
  auto coords = solveWeight(*n, s.homogeneousPart(*n));
  if (!coords) throw InternalError("leading part is not a Lie element of weight " + std::to_string(*n));
  return Leading{*n, std::move(*coords)};
}

ExponentVector NilpotentContext::normalForm(const TruncatedSeries& input) const {
  if (input.rank() != rank_) throw RankError("series rank does not match the context");
  TruncatedSeries s = input.bound() == q_ ? input : input.truncated(q_);
  ExponentVector e = zero();
  for (int n = 1; n < q_; ++n) {
    const Solver& sv = solver(n);
    auto part = s.homogeneousPart(n);
    bool any = false;
    for (const auto& x : part)
      if (x != 0) {
        any = true;
        break;
      }
    if (!any) continue;
    auto coords = solveWeight(n, part);
    if (!coords) throw InternalError("inconsistent weight-" + std::to_string(n) + " system in normal form");
    // Strip P_n = prod c^e(c) from the left: S <- P_n^{-1} S.
    for (std::size_t r = 0; r < sv.count; ++r) {
      const Integer& k = (*coords)[r];
      if (k == 0) continue;
      const int ordinal = sv.first + static_cast<int>(r);
      e[static_cast<std::size_t>(ordinal)] = k;
      if (n + 1 < q_) s = commcalc::multiply(basisPower(ordinal, -k), s);
    }
  }
  return e;
}

ExponentVector NilpotentContext::normalForm(const Word& w) const {
  if (w.rank() != rank_) throw RankError("word rank does not match the context");
  return normalForm(expand(w, q_));
}

TruncatedSeries NilpotentContext::series(const ExponentVector& e) const {
  if (e.size() != dimension()) throw DomainError("exponent vector has wrong length");
  TruncatedSeries s = TruncatedSeries::one(rank_, q_);
  for (std::size_t c = 0; c < e.size(); ++c)
    if (e[c] != 0) s = commcalc::multiply(s, basisPower(static_cast<int>(c), e[c]));
  return s;
}

Word NilpotentContext::evaluate(const ExponentVector& e) const {
  if (e.size() != dimension()) throw DomainError("exponent vector has wrong length");
  Word w = Word::identity(rank_);
  for (std::size_t c = 0; c < e.size(); ++c) {
    if (e[c] == 0) continue;
    if (e[c] > std::numeric_limits<long>::max() || e[c] < std::numeric_limits<long>::min())
      throw ResourceError("exponent too large to evaluate as a word");
    w = commcalc::multiply(w, power(basis_->asWord(static_cast<int>(c)), e[c].convert_to<long>()));
  }
  return w;
}

int NilpotentContext::weightOf(const Word& w) const {
  auto lead = leading(expand(w, q_));
  return lead ? lead->weight : q_;
}

ExponentVector NilpotentContext::multiply(const ExponentVector& a, const ExponentVector& b) const {
  return normalForm(commcalc::multiply(series(a), series(b)));
}

}  // namespace commcalc
