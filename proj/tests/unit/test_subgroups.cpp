#include <catch_amalgamated.hpp>

#include <random>

#include "commcalc/errors.hpp"
#include "commcalc/lattice.hpp"
#include "commcalc/subgroups.hpp"
#include "random_words.hpp"

using namespace commcalc;
using commcalc::testing::randomWordUpTo;

namespace {

std::shared_ptr<const NilpotentContext> context(int m, int q) { return std::make_shared<const NilpotentContext>(m, q); }

Word w2(const char* t) { return parseWord(t, 2); }

SubgroupLattice scheme(const std::string& text, const std::shared_ptr<const NilpotentContext>& ctx, int length = 0) {
  auto s = GeneratorScheme::parse(text);
  s.length = length;
  return buildScheme(s, ctx);
}

bool inside(LatticeRelation r) { return r == LatticeRelation::Equal || r == LatticeRelation::StrictlyFiner; }

}  // namespace

TEST_CASE("normal closure of a generator", "[subgroups]") {
  auto ctx = context(2, 3);
  auto lat = closeSubgroup({w2("a")}, ctx, true);
  REQUIRE(lat.normalClosed());
  REQUIRE(lat.contains(w2("[b,a]")));
  REQUIRE(lat.contains(w2("a^(b)")));
  REQUIRE_FALSE(lat.contains(w2("b")));
  auto plain = closeSubgroup({w2("a")}, ctx, false);
  REQUIRE_FALSE(plain.normalClosed());
  REQUIRE_FALSE(plain.contains(w2("[b,a]")));
  REQUIRE_THROWS_AS(closeSubgroup({}, ctx, true), DomainError);
}

TEST_CASE("lower central series lattices", "[subgroups]") {
  auto ctx = context(2, 5);
  for (int n = 1; n <= 4; ++n) {
    auto lat = scheme("gamma:" + std::to_string(n), ctx);
    for (int w = 1; w < 5; ++w) {
      auto [first, last] = ctx->basis().stratum(w);
      REQUIRE(lat.sectionIndex(w) == (w >= n ? 1 : 0));
      REQUIRE(lat.sectionLattice(w).size() == (w >= n ? static_cast<std::size_t>(last - first) : 0u));
    }
  }
  auto g2 = scheme("gamma:2", ctx);
  REQUIRE_FALSE(g2.contains(w2("a")));
  REQUIRE(g2.contains(w2("[a,b]^(a*b)")));
}

TEST_CASE("first Engel subgroup is the derived subgroup", "[subgroups]") {
  auto ctx = context(2, 5);
  auto eps = scheme("epsilon:1", ctx, 1);
  REQUIRE(compareLattices(eps, scheme("gamma:2", ctx)) == LatticeRelation::Equal);
}

TEST_CASE("abelian section matches exponent sums", "[subgroups]") {
  std::mt19937_64 rng(51);
  auto ctx = context(3, 4);
  for (int t = 0; t < 10; ++t) {
    std::vector<Word> gens;
    IntMatrix rows;
    for (int i = 0; i < 3; ++i) {
      Word w = randomWordUpTo(rng, 3, 6);
      gens.push_back(w);
      std::vector<Integer> row;
      for (long e : w.exponentSums()) row.push_back(e);
      rows.push_back(row);
    }
    auto lat = closeSubgroup(gens, ctx, t % 2 == 0);
    REQUIRE(lat.sectionLattice(1) == hermiteNormalForm(rows, 3));
  }
}

TEST_CASE("closure invariants", "[subgroups]") {
  std::mt19937_64 rng(52);
  auto ctx = context(2, 5);
  for (int t = 0; t < 6; ++t) {
    std::vector<Word> gens{randomWordUpTo(rng, 2, 5), randomWordUpTo(rng, 2, 5)};
    const bool normal = t % 2 == 1;
    auto lat = closeSubgroup(gens, ctx, normal);
    for (const auto& g : gens) REQUIRE(lat.contains(g));
    auto elems = lat.pivotElements();
    for (const auto& x : elems) {
      REQUIRE(lat.contains(invertUnit(x)));
      for (const auto& y : elems) {
        REQUIRE(lat.contains(multiply(x, y)));
        REQUIRE(lat.contains(seriesCommutator(x, y)));
      }
      if (normal)
        for (const auto& g : generatorSeries(*ctx)) REQUIRE(lat.contains(multiply(multiply(invertUnit(g), x), g)));
    }
    for (const auto& [ordinal, pivot] : lat.pivots()) REQUIRE(pivot.lead > 0);
    for (int n = 1; n < 5; ++n) {
      auto h = lat.sectionLattice(n);
      REQUIRE(hermiteNormalForm(h, h.empty() ? 0 : h.front().size()) == h);
    }
    // Products of generators stay inside; random outside words rarely do.
    Word product = multiply(power(gens[0], 3), inverse(gens[1]));
    REQUIRE(lat.contains(product));
  }
}

TEST_CASE("k-quasi-free membership", "[subgroups]") {
  auto ctx = context(2, 6);
  auto mu1 = scheme("mu28:1", ctx);
  REQUIRE(mu1.contains(w2("[b,a,a,a]")));
  REQUIRE_FALSE(mu1.contains(w2("[b,a,a,b]")));
  auto [first, last] = ctx->basis().stratum(5);
  for (int c = first; c < last; ++c) REQUIRE(mu1.contains(ctx->basis().asWord(c)));
}

TEST_CASE("three descriptions of the Milnor group kernel agree", "[subgroups]") {
  auto ctx = context(2, 4);
  auto def = buildStable(GeneratorScheme::parse("mu:0"), ctx);
  auto t27 = buildStable(GeneratorScheme::parse("mu27:0"), ctx);
  auto t28 = scheme("mu28:0", ctx);
  REQUIRE(def.stable);
  REQUIRE(t27.stable);
  REQUIRE(compareLattices(def.lattice, t28) == LatticeRelation::Equal);
  REQUIRE(compareLattices(t27.lattice, t28) == LatticeRelation::Equal);
  REQUIRE(def.lattice.contains(w2("[b,a,a]")));
  REQUIRE_FALSE(def.lattice.contains(w2("[b,a]")));
}

TEST_CASE("reduction modulo the k-quasi-free kernel", "[subgroups]") {
  NilpotentContext ctx(2, 6);
  auto find = [&](const std::string& name) {
    for (std::size_t i = 0; i < ctx.dimension(); ++i)
      if (ctx.basis().format(static_cast<int>(i)) == name) return i;
    FAIL("missing " << name);
    return std::size_t{0};
  };
  auto e = ctx.zero();
  e[find("[b,a,a,a]")] = 1;
  REQUIRE(reduceModMuK(e, 1, ctx) == ctx.zero());
  auto f = ctx.zero();
  f[find("[b,a,a,b]")] = 5;
  REQUIRE(reduceModMuK(f, 1, ctx) == f);
  auto g = ctx.normalForm(w2("a*b*[b,a]^3"));
  REQUIRE(reduceModMuK(g, 4, ctx) == g);
  REQUIRE(reduceModMuK(g, 9, ctx) == g);
  REQUIRE_THROWS_AS(reduceModMuK(g, 2, ctx), DomainError);
  // Reduction agrees with membership: e and reduce(e) differ by an element of mu_1.
  auto mu1 = buildScheme(GeneratorScheme::parse("mu28:1"), std::make_shared<const NilpotentContext>(2, 6));
  std::mt19937_64 rng(53);
  for (int t = 0; t < 10; ++t) {
    Word w = randomWordUpTo(rng, 2, 10);
    auto nf = mu1.context().normalForm(w);
    auto reduced = reduceModMuK(nf, 1, mu1.context());
    Word diff = multiply(inverse(mu1.context().evaluate(reduced)), w);
    REQUIRE(mu1.contains(diff));
  }
}

TEST_CASE("Engel subgroup comparisons", "[subgroups]") {
  auto ctx = context(2, 5);
  auto eps2 = scheme("epsilon:2", ctx);
  auto nu2 = scheme("nu:2", ctx, 2);
  REQUIRE(compareLattices(eps2, nu2) == LatticeRelation::Equal);
  auto ctx3 = context(3, 4);
  REQUIRE(compareLattices(scheme("epsilon:2", ctx3), scheme("gamma:3", ctx3)) == LatticeRelation::StrictlyFiner);
}

TEST_CASE("Engel subgroups sit between each other", "[subgroups]") {
  for (int n = 2; n <= 3; ++n) {
    auto ctx = context(2, n + 3);
    auto eps = scheme("epsilon:" + std::to_string(n), ctx, 2);
    auto nu = scheme("nu:" + std::to_string(n), ctx, 2);
    auto gam = scheme("gamma:" + std::to_string(n + 1), ctx);
    REQUIRE(inside(compareLattices(eps, nu)));
    REQUIRE(inside(compareLattices(nu, gam)));
    auto tail = scheme("gamma:" + std::to_string(n + 2), ctx);
    REQUIRE(compareLattices(joinLattices(eps, tail), joinLattices(nu, tail)) == LatticeRelation::Equal);
  }
}

TEST_CASE("third Engel subgroup has index two in weight four", "[subgroups]") {
  auto ctx = context(2, 5);
  auto eps3 = scheme("epsilon:3", ctx, 3);
  REQUIRE(eps3.sectionIndex(4) == 2);
}

TEST_CASE("commutator with the iterated closure equals the Engel subgroup", "[subgroups]") {
  // [g, <g>_2] = [G, g, g, g] for g = a in F_2 / gamma_5, both computed exactly.
  auto ctx = context(2, 5);
  const auto g = expand(w2("a"), 5);
  const auto gens = generatorSeries(*ctx);

  SubgroupLattice h1(ctx, gens);
  h1.insert(g);
  SubgroupLattice h2(ctx, h1.pivotElements());
  h2.insert(g);
  SubgroupLattice lhs(ctx, h2.pivotElements());
  std::vector<TruncatedSeries> lhsGens;
  for (const auto& p : h2.pivotElements()) lhsGens.push_back(seriesCommutator(g, p));
  lhs.insert(lhsGens);

  SubgroupLattice k(ctx, gens);
  std::vector<TruncatedSeries> kGens;
  for (const auto& x : gens) kGens.push_back(seriesCommutator(x, g));
  k.insert(kGens);
  for (int step = 0; step < 2; ++step) {
    SubgroupLattice next(ctx, k.pivotElements());
    std::vector<TruncatedSeries> nextGens;
    for (const auto& p : k.pivotElements()) nextGens.push_back(seriesCommutator(p, g));
    next.insert(nextGens);
    k = std::move(next);
  }
  REQUIRE(compareLattices(lhs, k) == LatticeRelation::Equal);
}

TEST_CASE("deep conjugates in the fine kernel", "[subgroups]") {
  auto ctx = context(2, 6);
  auto delta = scheme("delta:1", ctx);
  REQUIRE(delta.contains(w2("[b,a,a,b,b]")));
  REQUIRE(compareLattices(delta, scheme("delta-conj:1", ctx)) == LatticeRelation::Equal);
  REQUIRE(delta.contains(w2("[a^(b),b,b,b]")));
}

TEST_CASE("metabelian images of the two kernels", "[subgroups]") {
  auto ctx = context(2, 6);
  auto d2 = scheme("derived2", ctx, 2);
  REQUIRE(compareLattices(joinLattices(scheme("mu28:1", ctx), d2), joinLattices(scheme("delta:1", ctx, 2), d2)) ==
          LatticeRelation::Equal);
}

TEST_CASE("lattices grow with the instantiation length", "[subgroups]") {
  auto ctx = context(2, 5);
  for (const char* name : {"epsilon:2", "delta:0", "mu:1"}) {
    auto small = scheme(name, ctx, 1);
    auto big = scheme(name, ctx, 2);
    REQUIRE(inside(compareLattices(small, big)));
  }
}

TEST_CASE("every instantiated word is a member", "[subgroups]") {
  auto ctx = context(2, 5);
  for (const char* name : {"epsilon:2", "nu:2", "delta:1", "mu27:1", "nk:1:1", "derived2"}) {
    auto s = GeneratorScheme::parse(name);
    s.length = 2;
    auto inst = instantiate(s, *ctx);
    auto lat = closeSubgroup(inst.words, ctx, inst.normal);
    for (const auto& w : inst.words) REQUIRE(lat.contains(w));
  }
}

TEST_CASE("scheme parsing", "[subgroups]") {
  REQUIRE(GeneratorScheme::parse("nk:2:1").component == 1);
  REQUIRE(GeneratorScheme::parse("delta-conj:3").name() == "delta-conj:3");
  REQUIRE(GeneratorScheme::parse("derived2").kind == GeneratorScheme::Kind::Derived2);
  REQUIRE_THROWS_AS(GeneratorScheme::parse("lambda:1"), ParseError);
  REQUIRE_THROWS_AS(GeneratorScheme::parse("mu"), ParseError);
  REQUIRE_THROWS_AS(GeneratorScheme::parse("mu:x"), ParseError);
  REQUIRE_THROWS_AS(GeneratorScheme::parse("gamma:0"), DomainError);
}

TEST_CASE("instantiation cap", "[subgroups]") {
  NilpotentContext ctx(2, 5);
  auto s = GeneratorScheme::parse("epsilon:1");
  s.maxWords = 5;
  REQUIRE_THROWS_AS(instantiate(s, ctx), ResourceError);
}

TEST_CASE("Engel image spans", "[subgroups]") {
  NilpotentContext c2(2, 4);
  auto full = engelImageSpan(2, c2, 2);
  REQUIRE(full.index == 1);
  REQUIRE(full.stable);
  NilpotentContext c25(2, 5);
  auto e3 = engelImageSpan(3, c25, 1);
  REQUIRE(e3.index == 2);
  REQUIRE_THROWS_AS(engelImageSpan(3, c2, 1), DomainError);
}
