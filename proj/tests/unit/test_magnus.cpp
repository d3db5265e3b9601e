#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "commcalc/errors.hpp"
#include "commcalc/magnus.hpp"
#include "random_words.hpp"

using namespace commcalc;
using commcalc::testing::randomWordUpTo;

namespace {

using SparseSeries = std::map<Monomial, Integer>;

// Oracle: sparse letter-by-letter product with single-letter series.
SparseSeries naiveExpand(const Word& w, int bound) {
  SparseSeries s{{{}, 1}};
  for (const auto& run : w.letters()) {
    const long step = run.exponent > 0 ? 1 : -1;
    for (long t = 0; t < std::labs(run.exponent); ++t) {
      SparseSeries next;
      for (const auto& [mono, c] : s) {
        next[mono] += c;
        Monomial ext = mono;
        for (int j = 1; static_cast<int>(ext.size()) + 1 < bound + 0 && j < bound; ++j) {
          ext.push_back(run.generator);
          if (static_cast<int>(ext.size()) >= bound) break;
          // x^{+1} -> 1 + X ; x^{-1} -> sum (-X)^j
          if (step > 0 && j > 1) break;
          next[ext] += (step < 0 && j % 2 == 1) ? Integer(-c) : c;
        }
      }
      s.clear();
      for (auto& [mono, c] : next)
        if (c != 0) s[mono] = c;
    }
  }
  return s;
}

SparseSeries toSparse(const TruncatedSeries& s) {
  SparseSeries out;
  for (int d = 0; d < s.bound(); ++d)
    for (std::size_t i = 0; i < s.stratumSize(d); ++i)
      if (s.at(d, i) != 0) out[TruncatedSeries::monomialAt(s.rank(), d, i)] = s.at(d, i);
  return out;
}

Word w2(const char* t) { return parseWord(t, 2); }

}  // namespace

TEST_CASE("expansion of generators and their inverses", "[magnus]") {
  REQUIRE(format(expand(w2("a"), 4)) == "1 + X1");
  REQUIRE(format(expand(w2("a^-1"), 4)) == "1 - X1 + X1X1 - X1X1X1");
  REQUIRE(format(expand(w2("[a,b]"), 3)) == "1 + X1X2 - X2X1");
  REQUIRE(format(expand(w2("a^2"), 4)) == "1 + 2X1 + X1X1");
}

TEST_CASE("expansion matches the naive oracle", "[magnus]") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    const int rank = 2 + i % 2;
    const int bound = 2 + i % 5;
    Word w = randomWordUpTo(rng, rank, 14);
    REQUIRE(toSparse(expand(w, bound)) == naiveExpand(w, bound));
  }
}

TEST_CASE("series arithmetic", "[magnus]") {
  TruncatedSeries x = TruncatedSeries::variable(2, 3, 1);
  TruncatedSeries one = TruncatedSeries::one(2, 3);
  TruncatedSeries onePlusX = add(one, x);
  TruncatedSeries inv = add(subtract(one, x), multiply(x, x));
  REQUIRE(multiply(onePlusX, inv) == one);
  REQUIRE(invertUnit(onePlusX) == inv);
  REQUIRE(invertUnit(subtract(TruncatedSeries::zero(2, 3), onePlusX)) ==
          subtract(TruncatedSeries::zero(2, 3), inv));
  REQUIRE_THROWS_AS(invertUnit(add(onePlusX, one)), DomainError);
  REQUIRE_THROWS_AS(multiply(one, TruncatedSeries::one(2, 4)), DomainError);
}

TEST_CASE("expansion is a homomorphism", "[magnus]") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    const int bound = 1 + i % 6;
    Word u = randomWordUpTo(rng, 3, 10), v = randomWordUpTo(rng, 3, 10);
    REQUIRE(expand(multiply(u, v), bound) == multiply(expand(u, bound), expand(v, bound)));
    REQUIRE(expand(inverse(u), bound) == invertUnit(expand(u, bound)));
    REQUIRE(expand(power(u, 3), bound) == unitPower(expand(u, bound), 3));
    REQUIRE(expand(power(u, -2), bound) == unitPower(expand(u, bound), -2));
  }
}

TEST_CASE("coefficients", "[magnus]") {
  auto s = expand(w2("[a,b]"), 3);
  REQUIRE(s.coefficient({1, 2}) == 1);
  REQUIRE(s.coefficient({2, 1}) == -1);
  REQUIRE(expand(w2("a"), 3).coefficient({}) == 1);
  REQUIRE(expand(w2("a"), 3).coefficient({2}) == 0);
  REQUIRE_THROWS_AS(s.coefficient({1, 2, 1}), DomainError);
}

TEST_CASE("minimal degree in a variable", "[magnus]") {
  REQUIRE(minDegreeIn(expand(w2("[a,b]"), 4), 1) == 1);
  REQUIRE(minDegreeIn(expand(w2("b"), 4), 1) == 0);
  REQUIRE(minDegreeIn(expand(w2("[[a,b],b]"), 4), 2) == 2);
  REQUIRE_FALSE(minDegreeIn(expand(w2("[a,b]"), 2), 1).has_value());
}

TEST_CASE("degree bounds under inverse, product and commutator", "[magnus]") {
  std::mt19937_64 rng(23);
  const int bound = 6;
  for (int i = 0; i < 80; ++i) {
    Word a = randomWordUpTo(rng, 2, 6), b = randomWordUpTo(rng, 2, 6);
    if (i % 3 == 0) a = commutator(a, Word::generator(2, 1));
    for (int var = 1; var <= 2; ++var) {
      auto da = minDegreeIn(expand(a, bound), var);
      auto db = minDegreeIn(expand(b, bound), var);
      auto dInv = minDegreeIn(expand(inverse(a), bound), var);
      auto dProd = minDegreeIn(expand(multiply(a, b), bound), var);
      auto dComm = minDegreeIn(expand(commutator(a, b), bound), var);
      const int d1 = da.value_or(bound), d2 = db.value_or(bound);
      REQUIRE(dInv.value_or(bound) >= d1);
      REQUIRE(dProd.value_or(bound) >= std::min(d1, d2));
      REQUIRE(dComm.value_or(bound) >= std::min(bound, d1 + d2));
    }
  }
}

TEST_CASE("left-normed commutators start in their weight", "[magnus]") {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> gen(1, 3);
  for (int n = 1; n <= 5; ++n) {
    for (int t = 0; t < 20; ++t) {
      std::vector<Word> entries;
      for (int j = 0; j < n; ++j) entries.push_back(Word::generator(3, gen(rng), (t % 2) ? 1 : -1));
      auto s = expand(leftNormed(entries), 6);
      auto low = s.lowestPositiveDegree();
      REQUIRE((!low || *low >= n));
    }
  }
}

TEST_CASE("series printing order", "[magnus]") {
  auto s = expand(w2("b*a"), 3);
  REQUIRE(format(s) == "1 + X1 + X2 + X2X1");
  REQUIRE(format(TruncatedSeries::zero(2, 3)) == "0");
}
