#include "commcalc/magnus.hpp"

#include <sstream>

#include <boost/functional/hash.hpp>

#include "commcalc/errors.hpp"

namespace commcalc {
namespace {

void requireCompatible(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.rank() != b.rank()) throw RankError("series rank mismatch");
  if (a.bound() != b.bound()) throw DomainError("series truncation mismatch");
}

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace

TruncatedSeries::TruncatedSeries(int rank, int bound) : rank_(rank), bound_(bound) {
  if (rank < 1) throw DomainError("series rank must be positive");
  if (bound < 1) throw DomainError("truncation bound must be positive");
  offsets_.resize(static_cast<std::size_t>(bound) + 1);
  std::size_t total = 0;
  for (int d = 0; d <= bound; ++d) {
    offsets_[static_cast<std::size_t>(d)] = total;
    if (d < bound) total += ipow(rank, d);
  }
  coeffs_.assign(total, Integer(0));
}

TruncatedSeries TruncatedSeries::one(int rank, int bound) {
  TruncatedSeries s(rank, bound);
  s.coeffs_[0] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::variable(int rank, int bound, int index) {
  TruncatedSeries s(rank, bound);
  if (index < 1 || index > rank) throw RankError("variable index out of range");
  if (bound > 1) s.at(1, static_cast<std::size_t>(index - 1)) = 1;
  return s;
}

std::size_t TruncatedSeries::stratumSize(int d) const { return ipow(rank_, d); }

Monomial TruncatedSeries::monomialAt(int rank, int degree, std::size_t index) {
  Monomial mono(static_cast<std::size_t>(degree));
  for (int i = degree - 1; i >= 0; --i) {
    mono[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(rank)) + 1;
    index /= static_cast<std::size_t>(rank);
  }
  return mono;
}

std::size_t TruncatedSeries::indexOf(int rank, const Monomial& mono) {
  std::size_t index = 0;
  for (int v : mono) {
    if (v < 1 || v > rank) throw RankError("monomial variable out of range");
    index = index * static_cast<std::size_t>(rank) + static_cast<std::size_t>(v - 1);
  }
  return index;
}

Integer TruncatedSeries::coefficient(const Monomial& mono) const {
  if (static_cast<int>(mono.size()) >= bound_) throw DomainError("monomial degree not below truncation bound");
  return at(static_cast<int>(mono.size()), indexOf(rank_, mono));
}

void TruncatedSeries::setCoefficient(const Monomial& mono, const Integer& value) {
  if (static_cast<int>(mono.size()) >= bound_) throw DomainError("monomial degree not below truncation bound");
  at(static_cast<int>(mono.size()), indexOf(rank_, mono)) = value;
}

std::vector<Integer> TruncatedSeries::homogeneousPart(int d) const {
  if (d < 0 || d >= bound_) throw DomainError("degree outside truncation");
  return std::vector<Integer>(coeffs_.begin() + static_cast<std::ptrdiff_t>(offset(d)),
                              coeffs_.begin() + static_cast<std::ptrdiff_t>(offset(d + 1)));
}

void TruncatedSeries::setHomogeneousPart(int d, const std::vector<Integer>& coeffs) {
  if (d < 0 || d >= bound_) throw DomainError("degree outside truncation");
  if (coeffs.size() != stratumSize(d)) throw DomainError("homogeneous part has wrong size");
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin() + static_cast<std::ptrdiff_t>(offset(d)));
}

bool TruncatedSeries::isZero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::optional<int> TruncatedSeries::lowestPositiveDegree() const {
  for (int d = 1; d < bound_; ++d)
    for (std::size_t i = offset(d); i < offset(d + 1); ++i)
      if (coeffs_[i] != 0) return d;
  return std::nullopt;
}

TruncatedSeries TruncatedSeries::truncated(int newBound) const {
  if (newBound > bound_) throw DomainError("cannot raise truncation bound");
  TruncatedSeries s(rank_, newBound);
  std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(s.coeffs_.size()), s.coeffs_.begin());
  return s;
}

std::size_t TruncatedSeries::hash() const {
  std::size_t seed = static_cast<std::size_t>(rank_) * 31 + static_cast<std::size_t>(bound_);
  for (const auto& c : coeffs_) boost::hash_combine(seed, boost::multiprecision::hash_value(c));
  return seed;
}

TruncatedSeries expand(const Word& w, int bound) {
  TruncatedSeries s = TruncatedSeries::one(w.rank(), bound);
  const auto m = static_cast<std::size_t>(w.rank());
  std::vector<Integer> binom(static_cast<std::size_t>(bound));
  for (const auto& run : w.letters()) {
    for (int j = 0; j < bound; ++j) binom[static_cast<std::size_t>(j)] = binomial(Integer(run.exponent), static_cast<unsigned>(j));
    const auto g = static_cast<std::size_t>(run.generator - 1);
    // Right-multiply by sum_j binom(e, j) X_g^j, highest target degree first.
    for (int d = bound - 1; d >= 1; --d) {
      const std::size_t size = s.stratumSize(d);
      for (std::size_t idx = 0; idx < size; ++idx) {
        // idx = prefix * m^j + (g repeated j times); accumulate sources.
        Integer acc = 0;
        std::size_t prefix = idx;
        for (int j = 1; j <= d; ++j) {
          if (prefix % m != g) break;
          prefix /= m;
          const Integer& src = s.at(d - j, prefix);
          if (src != 0) acc += src * binom[static_cast<std::size_t>(j)];
        }
        if (acc != 0) s.at(d, idx) += acc;
      }
    }
  }
  return s;
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  requireCompatible(a, b);
  TruncatedSeries r = a;
  for (int d = 0; d < a.bound(); ++d)
    for (std::size_t i = 0; i < a.stratumSize(d); ++i) r.at(d, i) += b.at(d, i);
  return r;
}

TruncatedSeries subtract(const TruncatedSeries& a, const TruncatedSeries& b) {
  requireCompatible(a, b);
  TruncatedSeries r = a;
  for (int d = 0; d < a.bound(); ++d)
    for (std::size_t i = 0; i < a.stratumSize(d); ++i) r.at(d, i) -= b.at(d, i);
  return r;
}

TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b) {
  requireCompatible(a, b);
  const int bound = a.bound();
  TruncatedSeries r(a.rank(), bound);
  for (int da = 0; da < bound; ++da) {
    const std::size_t sa = a.stratumSize(da);
    for (std::size_t ia = 0; ia < sa; ++ia) {
      const Integer& ca = a.at(da, ia);
      if (ca == 0) continue;
      for (int db = 0; da + db < bound; ++db) {
        const std::size_t sb = b.stratumSize(db);
        const std::size_t base = ia * sb;
        for (std::size_t ib = 0; ib < sb; ++ib) {
          const Integer& cb = b.at(db, ib);
          if (cb != 0) r.at(da + db, base + ib) += ca * cb;
        }
      }
    }
  }
  return r;
}

TruncatedSeries invertUnit(const TruncatedSeries& s) {
  const Integer& c = s.constantTerm();
  if (c != 1 && c != -1) throw DomainError("constant term is not a unit");
  // s = c(1 + T) with T = c*s - 1; inverse = c * sum_j (-T)^j.
  TruncatedSeries t = s;
  for (int d = 0; d < s.bound(); ++d)
    for (std::size_t i = 0; i < s.stratumSize(d); ++i) t.at(d, i) *= c;
  t.at(0, 0) = 0;
  for (int d = 0; d < s.bound(); ++d)
    for (std::size_t i = 0; i < s.stratumSize(d); ++i) t.at(d, i) = -t.at(d, i);
  TruncatedSeries result = TruncatedSeries::one(s.rank(), s.bound());
  TruncatedSeries term = TruncatedSeries::one(s.rank(), s.bound());
  for (int j = 1; j < s.bound(); ++j) {
    term = multiply(term, t);
    if (term.isZero()) break;
    result = add(result, term);
  }
  if (c == -1)
    for (int d = 0; d < s.bound(); ++d)
      for (std::size_t i = 0; i < s.stratumSize(d); ++i) result.at(d, i) = -result.at(d, i);
  return result;
}

TruncatedSeries unitPower(const TruncatedSeries& s, const Integer& k) {
  if (s.constantTerm() != 1) throw DomainError("unitPower requires constant term 1");
  TruncatedSeries t = s;
  t.at(0, 0) = 0;
  TruncatedSeries result = TruncatedSeries::one(s.rank(), s.bound());
  TruncatedSeries term = TruncatedSeries::one(s.rank(), s.bound());
  for (int j = 1; j < s.bound(); ++j) {
    term = multiply(term, t);
    if (term.isZero()) break;
    Integer coeff = binomial(k, static_cast<unsigned>(j));
    if (coeff == 0) continue;
    for (int d = 1; d < s.bound(); ++d)
      for (std::size_t i = 0; i < s.stratumSize(d); ++i)
        if (term.at(d, i) != 0) result.at(d, i) += coeff * term.at(d, i);
  }
  return result;
}

std::optional<int> minDegreeIn(const TruncatedSeries& s, int var) {
  if (var < 1 || var > s.rank()) throw RankError("variable index out of range");
  std::optional<int> best;
  if (s.constantTerm() != 1) best = 0;
  const auto m = static_cast<std::size_t>(s.rank());
  const auto v = static_cast<std::size_t>(var - 1);
  for (int d = 1; d < s.bound(); ++d) {
    for (std::size_t i = 0; i < s.stratumSize(d); ++i) {
      if (s.at(d, i) == 0) continue;
      int count = 0;
      std::size_t idx = i;
      for (int k = 0; k < d; ++k) {
        if (idx % m == v) ++count;
        idx /= m;
      }
      if (!best || count < *best) best = count;
      if (*best == 0) return best;
    }
  }
  return best;
}

std::string format(const TruncatedSeries& s) {
  std::ostringstream out;
  bool first = true;
  for (int d = 0; d < s.bound(); ++d) {
    for (std::size_t i = 0; i < s.stratumSize(d); ++i) {
      const Integer& c = s.at(d, i);
      if (c == 0) continue;
      Integer magnitude = c < 0 ? Integer(-c) : c;
      if (first) {
        if (c < 0) out << "-";
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (d == 0) {
        out << magnitude;
        continue;
      }
      if (magnitude != 1) out << magnitude;
      for (int v : TruncatedSeries::monomialAt(s.rank(), d, i)) out << 'X' << v;
    }
  }
  if (first) return "0";
  return out.str();
}

}  // namespace commcalc
