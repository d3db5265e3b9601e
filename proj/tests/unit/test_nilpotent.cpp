#include <catch_amalgamated.hpp>

#include <random>

#include "commcalc/errors.hpp"
#include "commcalc/nilpotent.hpp"
#include "random_words.hpp"

using namespace commcalc;
using commcalc::testing::randomWordUpTo;

namespace {

int ordinalOf(const HallBasis& basis, const std::string& name) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis.format(static_cast<int>(i)) == name) return static_cast<int>(i);
  FAIL("no basic commutator " << name);
  return -1;
}

ExponentVector unit(const NilpotentContext& ctx, int ordinal, long value = 1) {
  auto e = ctx.zero();
  e[static_cast<std::size_t>(ordinal)] = value;
  return e;
}

}  // namespace

TEST_CASE("normal forms of basic commutators", "[nilpotent]") {
  NilpotentContext ctx(2, 5);
  const int ba = ordinalOf(ctx.basis(), "[b,a]");
  REQUIRE(ctx.normalForm(parseWord("[b,a]", 2)) == unit(ctx, ba));
  REQUIRE(ctx.normalForm(Word::identity(2)) == ctx.zero());
  for (std::size_t i = 0; i < ctx.dimension(); ++i)
    REQUIRE(ctx.normalForm(ctx.basis().asWord(static_cast<int>(i))) == unit(ctx, static_cast<int>(i)));
}

TEST_CASE("abab^-1... against a hand collection", "[nilpotent]") {
  NilpotentContext ctx(2, 3);
  // a b a^-1 b^-1 = [a^-1, b^-1]; modulo gamma_3 this is [a,b] = [b,a]^-1,
  // so the word equals a^0 b^0 [b,a]^{-1}.
  auto e = ctx.normalForm(parseWord("a*b*a^-1*b^-1", 2));
  REQUIRE(e == unit(ctx, 2, -1));
  // b a = a b [b,a]
  auto ba = ctx.normalForm(parseWord("b*a", 2));
  REQUIRE(ba[0] == 1);
  REQUIRE(ba[1] == 1);
  REQUIRE(ba[2] == 1);
}

TEST_CASE("normal form is sound and unique", "[nilpotent]") {
  std::mt19937_64 rng(31);
  for (int m = 2; m <= 3; ++m) {
    for (int q = 2; q <= (m == 2 ? 6 : 5); ++q) {
      NilpotentContext ctx(m, q);
      for (int t = 0; t < 30; ++t) {
        Word w = randomWordUpTo(rng, m, 12);
        auto e = ctx.normalForm(w);
        REQUIRE(expand(w, q) == expand(ctx.evaluate(e), q));
        REQUIRE(ctx.series(e) == expand(w, q));
      }
      std::uniform_int_distribution<int> coef(-3, 3);
      for (int t = 0; t < 30; ++t) {
        auto e = ctx.zero();
        for (auto& x : e) x = coef(rng);
        REQUIRE(ctx.normalForm(ctx.evaluate(e)) == e);
      }
    }
  }
}

TEST_CASE("weights", "[nilpotent]") {
  NilpotentContext ctx(2, 6);
  REQUIRE(ctx.weightOf(parseWord("[b,a,a]", 2)) == 3);
  REQUIRE(ctx.weightOf(parseWord("a*b", 2)) == 1);
  REQUIRE(ctx.weightOf(parseWord("[[b,a],[b,a,a]]", 2)) == 5);
  REQUIRE(ctx.weightOf(parseWord("[b,a,a,a,a,a]", 2)) == 6);
  REQUIRE(ctx.weightOf(Word::identity(2)) == 6);
}

TEST_CASE("products of weight-n commutators have weight at least n", "[nilpotent]") {
  std::mt19937_64 rng(32);
  NilpotentContext ctx(2, 6);
  for (int n = 1; n <= 5; ++n) {
    for (int t = 0; t < 10; ++t) {
      Word product = Word::identity(2);
      for (int f = 0; f < 3; ++f) {
        std::vector<Word> entries;
        for (int j = 0; j < n; ++j) entries.push_back(randomWordUpTo(rng, 2, 3));
        product = multiply(product, conjugate(leftNormed(entries), randomWordUpTo(rng, 2, 3)));
      }
      REQUIRE(ctx.weightOf(product) >= n);
    }
  }
}

TEST_CASE("three occurrences survive collection", "[nilpotent]") {
  // Left-normed commutators on {a,b} with at least three a's collect onto
  // basic commutators with at least three a's.
  NilpotentContext ctx(2, 6);
  const Word a = parseWord("a", 2), b = parseWord("b", 2);
  for (int n = 2; n <= 5; ++n) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<Word> entries;
      int as = 0;
      for (int j = 0; j < n; ++j) {
        const bool isA = (mask >> j) & 1;
        as += isA;
        entries.push_back(isA ? a : b);
      }
      if (as < 3) continue;
      auto e = ctx.normalForm(leftNormed(entries));
      for (std::size_t c = 0; c < e.size(); ++c)
        if (e[c] != 0) REQUIRE(ctx.basis()[c].multidegree[0] >= 3);
    }
  }
}

TEST_CASE("multiplication of normal forms", "[nilpotent]") {
  std::mt19937_64 rng(33);
  NilpotentContext ctx(2, 5);
  for (int t = 0; t < 20; ++t) {
    Word u = randomWordUpTo(rng, 2, 8), v = randomWordUpTo(rng, 2, 8);
    auto eu = ctx.normalForm(u), ev = ctx.normalForm(v);
    REQUIRE(ctx.multiply(eu, ev) == ctx.normalForm(multiply(u, v)));
    REQUIRE(ctx.multiply(eu, ctx.zero()) == eu);
    REQUIRE(ctx.multiply(eu, ctx.normalForm(inverse(u))) == ctx.zero());
  }
  auto ab = ctx.multiply(unit(ctx, 0), unit(ctx, 1));
  auto ba = ctx.multiply(unit(ctx, 1), unit(ctx, 0));
  REQUIRE(ab[0] == ba[0]);
  REQUIRE(ab[1] == ba[1]);
  REQUIRE(ba[2] - ab[2] == 1);
}

TEST_CASE("context limits", "[nilpotent]") {
  REQUIRE_THROWS_AS(NilpotentContext(2, 8), ResourceError);
  REQUIRE_THROWS_AS(NilpotentContext(3, 6), ResourceError);
  REQUIRE_THROWS_AS(NilpotentContext(2, 1), DomainError);
  Limits relaxed;
  relaxed.maxClassRank2 = 8;
  NilpotentContext big(2, 8, HallOrder::Standard, relaxed);
  REQUIRE(big.dimension() == 2 + 1 + 2 + 3 + 6 + 9 + 18);
  NilpotentContext ctx(2, 4);
  REQUIRE_THROWS_AS(ctx.normalForm(parseWord("a", 3)), RankError);
}

TEST_CASE("non-Lie parts are rejected by the solver", "[nilpotent]") {
  NilpotentContext ctx(2, 4);
  // X1X2 alone is not a Lie element.
  REQUIRE_FALSE(ctx.solveWeight(2, {0, 1, 0, 0}).has_value());
  auto coords = ctx.solveWeight(2, {0, -2, 2, 0});
  REQUIRE(coords.has_value());
  REQUIRE((*coords)[0] == 2);
}
