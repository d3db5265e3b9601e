#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <set>

#include "commcalc/errors.hpp"
#include "commcalc/hall.hpp"
#include "commcalc/lattice.hpp"
#include "commcalc/magnus.hpp"
#include "commcalc/milnor.hpp"
#include "commcalc/nilpotent.hpp"
#include "commcalc/sato_levine.hpp"
#include "commcalc/subgroups.hpp"
#include "commcalc/words.hpp"

namespace commcalc::cli {

using nlohmann::json;

using commcalc::toString;

namespace {

struct Context {
  const VerifyConfig& config;
  CheckResult& result;
  std::mt19937_64 rng;
  bool ok = true;

  void expect(bool condition, const std::string& what) {
    if (condition) return;
    ok = false;
    result.notes.push_back("failed: " + what);
  }
  void note(const std::string& text) { result.notes.push_back(text); }
};

using CheckFn = void (*)(Context&);

Word randomWord(std::mt19937_64& rng, int rank, int maxLength) {
  std::uniform_int_distribution<int> len(0, maxLength);
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sign(0, 1);
  const int n = len(rng);
  std::vector<Letter> letters;
  while (static_cast<int>(letters.size()) < n) {
    Letter l{gen(rng), sign(rng) ? 1L : -1L};
    if (!letters.empty() && letters.back().generator == l.generator && letters.back().exponent != l.exponent) continue;
    letters.push_back(l);
  }
  return Word(rank, letters);
}

std::shared_ptr<const NilpotentContext> makeContext(const Context& c, int m, int q) {
  return std::make_shared<const NilpotentContext>(m, q, HallOrder::Standard, c.config.limits);
}

GeneratorScheme schemeAt(const std::string& text, int length, int conjDepth = 0) {
  auto s = GeneratorScheme::parse(text);
  s.length = length;
  s.conjDepth = conjDepth;
  return s;
}

std::vector<Word> stratumWords(const NilpotentContext& ctx, int weight) {
  std::vector<Word> out;
  auto [first, last] = ctx.basis().stratum(weight);
  for (int c = first; c < last; ++c) out.push_back(ctx.basis().asWord(c));
  return out;
}

void wittOrrCount(Context& c) {
  const std::vector<int> hand{2, 1, 2, 3, 6, 9, 18, 30, 56};
  for (int n = 1; n <= 9; ++n)
    c.expect(wittCount(2, n) == hand[static_cast<std::size_t>(n - 1)], "N_" + std::to_string(n) + " = " + std::to_string(hand[static_cast<std::size_t>(n - 1)]));
  c.expect(2 * hand[7] - hand[8] == 4, "2 N_8 - N_9 = 4 from hand values");
  c.expect(countIndependentMu(2, 9) == 4, "countIndependentMu(2, 9) = 4");
  c.result.parameters = {{"m", 2}, {"weights", "1..9"}};
}

void hallStratum(Context& c) {
  HallBasis basis(3, 3, HallOrder::Standard, c.config.limits.maxBasisSize);
  const std::set<std::string> expected{"[b,a,a]", "[b,a,b]", "[b,a,c]", "[c,a,a]",
                                       "[c,a,b]", "[c,a,c]", "[c,b,b]", "[c,b,c]"};
  std::set<std::string> got;
  auto [first, last] = basis.stratum(3);
  for (int i = first; i < last; ++i) {
    const auto& e = basis[static_cast<std::size_t>(i)];
    c.expect(basis[static_cast<std::size_t>(e.left)].weight == 2 && basis[static_cast<std::size_t>(e.right)].weight == 1,
             basis.format(i) + " is [[x,y],z]");
    got.insert(basis.format(i));
  }
  c.expect(got == expected, "weight-3 stratum of F_3 equals the eight listed commutators");
  c.result.parameters = {{"m", 3}, {"weight", 3}};
}

void normalFormCheck(Context& c) {
  const int q = 6;
  auto ctx = makeContext(c, 2, q);
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    const Word w = randomWord(c.rng, 2, 12);
    if (expand(w, q) != expand(ctx->evaluate(ctx->normalForm(w)), q)) ++bad;
  }
  c.expect(bad == 0, "expand(w) = expand(evaluate(normalForm(w))) on 200 words (" + std::to_string(bad) + " bad)");
  std::uniform_int_distribution<int> entry(-2, 2);
  bad = 0;
  for (int t = 0; t < 200; ++t) {
    ExponentVector e = ctx->zero();
    for (auto& x : e) x = entry(c.rng);
    if (ctx->normalForm(ctx->evaluate(e)) != e) ++bad;
  }
  c.expect(bad == 0, "normalForm(evaluate(e)) = e on 200 vectors (" + std::to_string(bad) + " bad)");
  c.result.parameters = {{"m", 2}, {"q", q}, {"maxLength", 12}, {"samples", 200}};
}

void mu1ThreeForms(Context& c) {
  auto ctx = makeContext(c, 2, 6);
  auto def = buildStable(schemeAt("mu:1", 4, 2), ctx);
  auto t27 = buildStable(schemeAt("mu27:1", 4, 2), ctx);
  auto t28 = buildScheme(schemeAt("mu28:1", 4), ctx);
  const auto r1 = compareLattices(def.lattice, t27.lattice);
  const auto r2 = compareLattices(def.lattice, t28);
  const auto r3 = compareLattices(t27.lattice, t28);
  c.note("definition vs conjugate-tower form: " + toString(r1));
  c.note("definition vs basic-commutator form: " + toString(r2));
  c.note("conjugate-tower vs basic-commutator form: " + toString(r3));
  c.expect(r1 == LatticeRelation::Equal && r2 == LatticeRelation::Equal && r3 == LatticeRelation::Equal,
           "the three mu_1 lattices are equal");
  c.expect(def.stable, "definition lattice stable between L=3 and L=4");
  c.expect(t27.stable, "conjugate-tower lattice stable between L=3 and L=4");
  c.result.stable = def.stable && t27.stable;
  c.result.parameters = {{"m", 2}, {"k", 1}, {"q", 6}, {"L", 4}, {"conjDepth", 2}};
}

void mu1ClassBound(Context& c) {
  auto ctx = makeContext(c, 2, 6);
  auto built = buildStable(schemeAt("mu:1", 4, 2), ctx);
  const auto& mu1 = built.lattice;
  for (const auto& w : stratumWords(*ctx, 5)) c.expect(mu1.contains(w), format(w) + " in mu_1");
  c.expect(!mu1.contains(parseWord("[b,a,a,b]", 2)), "[b,a,a,b] not in mu_1");
  c.expect(mu1.contains(parseWord("[b,a,a,a]", 2)), "[b,a,a,a] in mu_1");
  c.result.stable = built.stable;
  c.result.parameters = {{"m", 2}, {"k", 1}, {"q", 6}, {"L", 4}, {"conjDepth", 2}};
}

void engel2Index3(Context& c) {
  auto ctx = makeContext(c, 3, 4);
  auto span = engelImageSpan(2, *ctx, 2);
  auto [first, last] = ctx->basis().stratum(3);
  const auto cols = static_cast<std::size_t>(last - first);
  IntMatrix rows = span.hnf;
  std::size_t bac = cols;
  std::size_t cab = cols;
  for (int i = first; i < last; ++i) {
    const auto& e = ctx->basis()[static_cast<std::size_t>(i)];
    const auto col = static_cast<std::size_t>(i - first);
    if (std::count(e.multidegree.begin(), e.multidegree.end(), 0) > 0) {
      std::vector<Integer> unit(cols, Integer(0));
      unit[col] = 1;
      rows.push_back(unit);
    }
    const std::string name = ctx->basis().format(i);
    if (name == "[b,a,c]") bac = col;
    if (name == "[c,a,b]") cab = col;
  }
  c.expect(bac < cols && cab < cols, "[b,a,c] and [c,a,b] are basic");
  if (bac < cols && cab < cols) {
    std::vector<Integer> sum(cols, Integer(0));
    sum[bac] = 1;
    sum[cab] = 1;
    rows.push_back(sum);
  }
  const Integer index = latticeIndex(hermiteNormalForm(rows, cols), cols);
  c.note("index in weight-3 section of F_3: " + toString(span.index));
  c.note("index in the quotient Q': " + toString(index));
  c.expect(index == 3, "image of epsilon_2 in Q' has index 3");
  c.expect(span.stable, "F_3 span stable between box 2 and box 3");

  auto ctx2 = makeContext(c, 2, 4);
  auto span2 = engelImageSpan(2, *ctx2, 2);
  c.expect(span2.index == 1, "epsilon_2 span for m=2 is the whole weight-3 section");
  c.expect(span2.stable, "F_2 span stable between box 2 and box 3");
  c.result.stable = span.stable && span2.stable;
  c.result.parameters = {{"n", 2}, {"m", json::array({3, 2})}, {"q", 4}, {"box", 2}};
}

void engel3Index2(Context& c) {
  auto ctx = makeContext(c, 2, 5);
  auto span = engelImageSpan(3, *ctx, 2);
  c.note("index in the weight-4 section: " + toString(span.index));
  c.expect(span.index == 2, "epsilon_3 image has index 2 in the weight-4 section of F_2");
  c.result.stable = span.stable;
  c.expect(span.stable, "span stable between box 2 and box 3");
  c.result.parameters = {{"n", 3}, {"m", 2}, {"q", 5}, {"box", 2}};
}

void delta1Length5(Context& c) {
  auto ctx = makeContext(c, 2, 6);
  auto built = buildStable(schemeAt("delta:1", 4), ctx);
  const auto& delta = built.lattice;
  c.expect(delta.contains(parseWord("[b,a,a,b,b]", 2)), "[b,a,a,b,b] in delta_1");
  for (const auto& w : stratumWords(*ctx, 5)) c.expect(delta.contains(w), format(w) + " in delta_1");
  c.expect(!delta.contains(parseWord("[b,a,a,b]", 2)), "[b,a,a,b] not in delta_1");
  c.result.stable = built.stable;
  c.result.parameters = {{"m", 2}, {"k", 1}, {"q", 6}, {"L", 4}};
}

Word conjNeg(const Word& x, const Word& g) { return inverse(conjugate(x, g)); }

void identities(Context& c) {
  const Word a = parseWord("a", 3), b = parseWord("b", 3), cc = parseWord("c", 3);
  const Word hw = multiply({conjugate(commutator(commutator(a, inverse(b)), cc), b),
                            conjugate(commutator(commutator(b, inverse(cc)), a), cc),
                            conjugate(commutator(commutator(cc, inverse(a)), b), a)});
  c.expect(verifyIdentity(hw, Word::identity(3)), "Hall-Witt identity in F_3");

  std::vector<std::pair<Word, Word>> pairs{{parseWord("a", 2), parseWord("b", 2)}};
  for (int i = 0; i < 20; ++i) pairs.emplace_back(randomWord(c.rng, 2, 5), randomWord(c.rng, 2, 4));
  for (const auto& [g, h] : pairs) {
    c.expect(verifyIdentity(leftNormed({g, h, h}), conjugate(commutator(h, conjugate(h, g)), commutator(g, h))),
             "[[g,h],h] = [h,h^g]^[g,h] for g=" + format(g) + ", h=" + format(h));
    const Word conj = multiply(power(commutator(h, commutator(g, h)), 2), commutator(h, g));
    c.expect(verifyIdentity(leftNormed({h, g, h, h}), conjNeg(leftNormed({g, h, h, h}), conj)),
             "[h,g,h,h] = [g,h,h,h]^-([h,[g,h]]^2 [h,g]) for g=" + format(g) + ", h=" + format(h));
    const Word right = commutator(h, commutator(h, commutator(h, g)));
    c.expect(verifyIdentity(leftNormed({g, h, h, h}), conjNeg(right, conjugate(commutator(g, h), h))),
             "[g,h,h,h] = [h,[h,[h,g]]]^-([g,h]^h) for g=" + format(g) + ", h=" + format(h));
  }
  for (int trial = 0; trial < 10; ++trial) {
    const Word g = randomWord(c.rng, 2, 6);
    const Word m = Word::generator(2, 1 + trial % 2);
    for (int k = 0; k <= 4; ++k) {
      Word tower = g;
      for (int j = 0; j <= k; ++j) tower = conjugate(m, tower);
      Word nested = g;
      for (int j = 0; j < k + 2; ++j) nested = commutator(m, nested);
      c.expect(verifyIdentity(commutator(m, tower), nested),
               "[m, m^...^g] = [m,[m,...,g]] for k=" + std::to_string(k) + ", g=" + format(g));
    }
  }
  c.result.parameters = {{"randomPairs", 20}, {"towerSamples", 10}, {"maxK", 4}};
}

Word randomGamma2Word(std::mt19937_64& rng, int m) {
  return multiply(commutator(randomWord(rng, m, 3), randomWord(rng, m, 3)),
                  commutator(randomWord(rng, m, 3), randomWord(rng, m, 3)));
}

void muBarEngine(Context& c) {
  auto hopf = parsePresentation("m=2\nq=5\nl1=b\nl2=a\n");
  c.expect(mu(hopf, {2, 1}).residue == 1, "Hopf mu(21) = 1");
  auto bor = parsePresentation("m=3\nq=5\nl1=[b,c]\nl2=[c,a]\nl3=[a,b]\n");
  c.expect(mu(bor, {2, 3, 1}).residue == 1, "Borromean mu(231) = 1");
  c.expect(mu(bor, {3, 2, 1}).residue == -1, "Borromean mu(321) = -1");
  c.expect(checkCyclicSymmetry(bor, 3).pass, "Borromean cyclic symmetry at length 3");
  c.expect(checkRelationsStar(bor, 2).pass, "Borromean relations (*) at n = 2");

  int mismatches = 0;
  int roundTrips = 0;
  int roundTripFailures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 2;
    std::vector<Word> ls;
    for (int i = 0; i < m; ++i) ls.push_back(randomGamma2Word(c.rng, m));
    LinkPresentation lp(m, 6, ls);
    for (int len = 2; len <= 4; ++len)
      for (const auto& idx : multiIndices(m, len)) {
        const MultiIndex I(idx.begin(), idx.end() - 1);
        if (muFromE(lp, I, idx.back()).at(I) != mu(lp, idx).residue) ++mismatches;
        if (!std::is_sorted(I.begin(), I.end())) continue;
        auto e = eFromMu(lp, I, idx.back());
        if (!e) continue;
        ++roundTrips;
        if (*e != commutatorNumbers(lp, I, idx.back())) ++roundTripFailures;
      }
  }
  c.expect(mismatches == 0, "muFromE = mu through length 4 on 20 presentations (" + std::to_string(mismatches) + " mismatches)");
  c.expect(roundTrips > 0 && roundTripFailures == 0,
           "eFromMu matches normal-form exponents on " + std::to_string(roundTrips) + " multisets with vanishing moduli");
  c.note("random longitudes are products of two commutators, so all linking numbers vanish");
  c.result.parameters = {{"presentations", 20}, {"m", json::array({2, 3})}, {"q", 6}, {"maxLength", 4}};
}

void muBarClassify(Context& c) {
  c.expect(classifyMu(parseMultiIndex("111112122"), 3) == MuClass::InvariantOnly, "111112122, k=3 is invariantOnly");
  c.expect(classifyMu(parseMultiIndex("1122"), 1) == MuClass::Extractable, "1122, k=1 is extractable");
  c.expect(classifyMu(parseMultiIndex("11111122"), 3) == MuClass::InvariantOnly, "11111122, k=3 is invariantOnly");
  c.result.parameters = {{"cases", 3}};
}

void satoLevine(Context& c) {
  for (int n = 1; n <= 5; ++n) {
    HomotopyTrace t;
    t.linking = {{0, 1}, {1, 0}};
    for (int r = 0; r < n; ++r) t.records.push_back({1, {0, 2}, {0, -1}, 0, 1});
    c.expect(betaTilde(t) == -2 * n, "betaTilde(M_" + std::to_string(n) + ") = " + std::to_string(-2 * n));
  }
  const std::vector<Rational> s0{0, 0};
  int gridBad = 0;
  for (int l = -4; l <= 5; ++l)
    for (int n = -4; n <= 5; ++n) {
      CrossingRecord rec{1, {0, n}, {0, l - n}, 7, 1};
      if (betaJump(s0, {{0, l}, {l, 0}}, rec) != -n * (l - n)) ++gridBad;
    }
  c.expect(gridBad == 0, "betaJump = -n(l-n) on the 10x10 grid");
  std::uniform_int_distribution<int> entry(-9, 9);
  int plusBad = 0;
  int minusBad = 0;
  int minorBad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Integer v[3];
    for (auto& x : v) {
      do x = entry(c.rng);
      while (x == 0);
    }
    const IntMatrix lk = linkingMatrix3(v[0], v[1], v[2]);
    const auto plus = threeComponentSpecialS(lk, 1);
    const auto minus = threeComponentSpecialS(lk, -1);
    if (determinant(surgeryMatrix(plus, lk)) != 0) ++plusBad;
    if (determinant(surgeryMatrix(minus, lk)) == 0) ++minusBad;
    for (const auto& s : {plus, minus}) {
      const auto cond = invarianceCondition(s, lk);
      if (!std::all_of(cond.begin(), cond.end(), [](bool b) { return b; })) ++minorBad;
    }
  }
  c.expect(plusBad == 0, "det A = 0 at the + vector for 100 matrices");
  c.expect(minusBad == 0, "det A != 0 at the - vector for 100 matrices");
  c.expect(minorBad == 0, "all principal minors vanish at both vectors");
  c.result.parameters = {{"n", "1..5"}, {"grid", "10x10"}, {"matrices", 100}};
}

void metabelianMuDelta(Context& c) {
  auto ctx = makeContext(c, 2, 6);
  auto d2 = buildScheme(schemeAt("derived2", 2), ctx);
  bool stable = true;
  for (int length = 3; length <= 4; ++length) {
    auto mu1 = buildStable(schemeAt("mu:1", length, 2), ctx);
    auto delta1 = buildStable(schemeAt("delta:1", length), ctx);
    const auto rel = compareLattices(joinLattices(mu1.lattice, d2), joinLattices(delta1.lattice, d2));
    c.note("L=" + std::to_string(length) + ": " + toString(rel));
    c.expect(rel == LatticeRelation::Equal, "mu_1 F'' = delta_1 F'' at L=" + std::to_string(length));
    if (length == 4) stable = mu1.stable && delta1.stable;
  }
  c.expect(stable, "both lattices stable between L=3 and L=4");
  c.result.stable = stable;
  c.result.parameters = {{"m", 2}, {"k", 1}, {"q", 6}, {"L", json::array({3, 4})}};
}

struct Entry {
  CheckInfo info;
  CheckFn fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{"witt-orr-count", "Witt counts of F_2 through weight 9 and the four independent length-9 invariants", 1, 0}, wittOrrCount},
      {{"hall-stratum", "weight-3 basic commutators of F_3", 1, 0}, hallStratum},
      {{"normal-form", "normal forms are sound and unique in F_2 / gamma_6", 30, 6}, normalFormCheck},
      {{"mu1-three-forms", "three generating families of mu_1 give one lattice", 300, 6}, mu1ThreeForms},
      {{"mu1-class-bound", "weight-5 commutators lie in mu_1 while [b,a,a,b] does not", 60, 6}, mu1ClassBound},
      {{"engel2-index3", "second Engel image has index 3 in Q' and fills weight 3 for m=2", 60, 4}, engel2Index3},
      {{"engel3-index2", "third Engel image has index 2 in weight 4 of F_2", 60, 5}, engel3Index2},
      {{"delta1-length5", "delta_1 contains [b,a,a,b,b] and all weight-5 commutators", 300, 6}, delta1Length5},
      {{"identities", "exact commutator identities in free groups", 1, 0}, identities},
      {{"mu-bar-engine", "mu-bar invariants, commutator numbers and relations (*)", 60, 6}, muBarEngine},
      {{"mu-bar-classify", "classification of mu-bar indices", 1, 0}, muBarClassify},
      {{"sato-levine", "generalized Sato-Levine jumps and the determinant calculus", 10, 0}, satoLevine},
      {{"metabelian-mu-delta", "mu_1 and delta_1 agree modulo the second derived subgroup", 600, 6}, metabelianMuDelta},
  };
  return entries;
}

}  // namespace

std::string toString(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unstable: return "unstable";
  }
  return "fail";
}

VerifyConfig VerifyConfig::fromJson(const json& j) {
  VerifyConfig c;
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("q")) c.q = j.at("q").get<int>();
  if (j.contains("maxWordLetters")) c.limits.maxWordLetters = j.at("maxWordLetters").get<std::size_t>();
  if (j.contains("maxBasisSize")) c.limits.maxBasisSize = j.at("maxBasisSize").get<std::size_t>();
  if (j.contains("maxInstantiatedWords")) c.limits.maxInstantiatedWords = j.at("maxInstantiatedWords").get<std::size_t>();
  if (j.contains("maxClass")) {
    const auto& mc = j.at("maxClass");
    if (mc.contains("rank2")) c.limits.maxClassRank2 = mc.at("rank2").get<int>();
    if (mc.contains("rank3")) c.limits.maxClassRank3 = mc.at("rank3").get<int>();
    if (mc.contains("rank4")) c.limits.maxClassRank4 = mc.at("rank4").get<int>();
    if (mc.contains("other")) c.limits.maxClassOther = mc.at("other").get<int>();
  }
  if (j.contains("timeouts")) c.timeouts = j.at("timeouts").get<std::map<std::string, double>>();
  if (j.contains("only")) c.only = j.at("only").get<std::vector<std::string>>();
  for (const auto& [key, value] : j.items()) {
    static const std::set<std::string> known{"seed", "q", "maxWordLetters", "maxBasisSize", "maxInstantiatedWords",
                                             "maxClass", "timeouts", "only"};
    if (!known.count(key)) throw ParseError("unknown config key '" + key + "'");
  }
  return c;
}

VerifyConfig VerifyConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return fromJson(json::parse(in));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json VerifyConfig::toJson() const {
  json j{{"seed", seed},
         {"maxWordLetters", limits.maxWordLetters},
         {"maxBasisSize", limits.maxBasisSize},
         {"maxInstantiatedWords", limits.maxInstantiatedWords},
         {"maxClass",
          {{"rank2", limits.maxClassRank2}, {"rank3", limits.maxClassRank3}, {"rank4", limits.maxClassRank4}, {"other", limits.maxClassOther}}}};
  if (q) j["q"] = *q;
  json t = json::object();
  for (const auto& info : checkCatalog()) t[info.id] = timeouts.count(info.id) ? timeouts.at(info.id) : info.defaultLimit;
  j["timeouts"] = t;
  if (!only.empty()) j["only"] = only;
  return j;
}

bool VerificationReport::allPass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.verdict == Verdict::Pass; });
}

bool VerificationReport::anyFail() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.verdict == Verdict::Fail; });
}

json VerificationReport::toJson() const {
  json list = json::array();
  for (const auto& r : checks) {
    list.push_back({{"id", r.id},
                    {"claim", r.claim},
                    {"parameters", r.parameters},
                    {"verdict", toString(r.verdict)},
                    {"stable", r.stable ? json(*r.stable) : json(nullptr)},
                    {"seconds", r.seconds},
                    {"limitSeconds", r.limitSeconds},
                    {"notes", r.notes}});
  }
  return {{"seed", seed}, {"allPass", allPass()}, {"checks", list}};
}

const std::vector<CheckInfo>& checkCatalog() {
  static const std::vector<CheckInfo> catalog = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

VerificationReport runVerify(const VerifyConfig& config, const std::function<void(const CheckResult&)>& progress) {
  for (const auto& id : config.only) {
    const auto& cat = checkCatalog();
    if (std::none_of(cat.begin(), cat.end(), [&](const CheckInfo& i) { return i.id == id; }))
      throw DomainError("unknown check id '" + id + "'");
  }
  VerificationReport report;
  report.seed = config.seed;
  const Limits saved = defaultLimits();
  setDefaultLimits(config.limits);
  for (std::size_t index = 0; index < registry().size(); ++index) {
    const auto& [info, fn] = registry()[index];
    if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), info.id) == config.only.end()) continue;
    CheckResult result;
    result.id = info.id;
    result.claim = info.claim;
    result.limitSeconds = config.timeouts.count(info.id) ? config.timeouts.at(info.id) : info.defaultLimit;
    if (config.q && info.requiredQ > 0 && *config.q < info.requiredQ) {
      result.verdict = Verdict::Unstable;
      result.notes.push_back("skipped: needs q=" + std::to_string(info.requiredQ) + ", configured q=" + std::to_string(*config.q));
    } else {
      Context ctx{config, result, std::mt19937_64(config.seed + index), true};
      const auto start = std::chrono::steady_clock::now();
      try {
        fn(ctx);
        result.verdict = ctx.ok ? Verdict::Pass : Verdict::Fail;
      } catch (const ResourceError& e) {
        result.verdict = Verdict::Unstable;
        result.notes.push_back(std::string("resource cap: ") + e.what());
      } catch (const std::exception& e) {
        result.verdict = Verdict::Fail;
        result.notes.push_back(std::string("error: ") + e.what());
      }
      result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (result.verdict == Verdict::Pass && result.seconds > result.limitSeconds) {
        result.verdict = Verdict::Fail;
        result.notes.push_back("exceeded the time limit");
      }
    }
    if (progress) progress(result);
    report.checks.push_back(std::move(result));
  }
  setDefaultLimits(saved);
  return report;
}

}  // namespace commcalc::cli
