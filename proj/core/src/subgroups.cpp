#include "commcalc/subgroups.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "commcalc/errors.hpp"
#include "commcalc/lattice.hpp"
#include "commcalc/limits.hpp"

namespace commcalc {

TruncatedSeries seriesCommutator(const TruncatedSeries& a, const TruncatedSeries& b) {
  return multiply(multiply(invertUnit(a), invertUnit(b)), multiply(a, b));
}

std::vector<TruncatedSeries> generatorSeries(const NilpotentContext& ctx) {
  std::vector<TruncatedSeries> gens;
  for (int i = 1; i <= ctx.rank(); ++i) gens.push_back(expand(Word::generator(ctx.rank(), i), ctx.q()));
  return gens;
}

SubgroupLattice::SubgroupLattice(std::shared_ptr<const NilpotentContext> ctx, std::vector<TruncatedSeries> conjugators)
    : ctx_(std::move(ctx)) {
  if (!ctx_) throw DomainError("missing nilpotent context");
  addConjugators(conjugators);
}

void SubgroupLattice::addConjugators(const std::vector<TruncatedSeries>& conjugators) {
  for (const auto& c : conjugators) {
    if (c.rank() != ctx_->rank() || c.bound() != ctx_->q()) throw DomainError("conjugator does not match the context");
    if (std::find(conjugators_.begin(), conjugators_.end(), c) != conjugators_.end()) continue;
    conjugators_.push_back(c);
    for (const auto& [ordinal, pivot] : pivots_) queue_.push_back(seriesCommutator(pivot.element, c));
  }
  const auto gens = generatorSeries(*ctx_);
  normal_ = std::all_of(gens.begin(), gens.end(), [this](const TruncatedSeries& g) {
    return std::find(conjugators_.begin(), conjugators_.end(), g) != conjugators_.end();
  });
  drain();
  sweep();
}

void SubgroupLattice::enqueueClosure(int ordinal) {
  const TruncatedSeries& p = pivots_.at(ordinal).element;
  for (const auto& [other, pivot] : pivots_)
    if (other != ordinal) queue_.push_back(seriesCommutator(p, pivot.element));
  for (const auto& c : conjugators_) queue_.push_back(seriesCommutator(p, c));
}

void SubgroupLattice::process(TruncatedSeries r) {
  while (true) {
    auto lead = ctx_->leading(r);
    if (!lead) return;
    std::size_t i = 0;
    while (lead->coordinates[i] == 0) ++i;
    const int ordinal = ctx_->basis().stratum(lead->weight).first + static_cast<int>(i);
    Integer c = lead->coordinates[i];
    auto it = pivots_.find(ordinal);
    if (it == pivots_.end()) {
      if (c < 0) {
        r = invertUnit(r);
        for (auto& x : lead->coordinates) x = -x;
        c = -c;
      }
      pivots_[ordinal] = Pivot{ordinal, lead->weight, c, std::move(lead->coordinates), std::move(r)};
      enqueueClosure(ordinal);
      return;
    }
    Pivot& p = it->second;
    if (c % p.lead == 0) {
      r = multiply(unitPower(p.element, -(c / p.lead)), r);
      continue;
    }
    Integer s, t;
    const Integer g = extendedGcd(p.lead, c, s, t);
    TruncatedSeries combined = multiply(unitPower(p.element, s), unitPower(r, t));
    auto newLead = ctx_->leading(combined);
    if (!newLead || newLead->weight != lead->weight) throw InternalError("gcd step changed the leading weight");
    queue_.push_back(p.element);
    queue_.push_back(std::move(r));
    p.lead = g;
    p.row = std::move(newLead->coordinates);
    p.element = std::move(combined);
    if (p.row[i] != g) throw InternalError("gcd step produced an unexpected leading exponent");
    enqueueClosure(ordinal);
    return;
  }
}

void SubgroupLattice::drain() {
  while (!queue_.empty()) {
    TruncatedSeries s = std::move(queue_.back());
    queue_.pop_back();
    process(std::move(s));
  }
}

void SubgroupLattice::sweep() {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<TruncatedSeries> elems = pivotElements();
    for (std::size_t i = 0; i < elems.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < elems.size() && !changed; ++j) {
        TruncatedSeries r = sift(seriesCommutator(elems[i], elems[j]));
        if (ctx_->leading(r)) {
          queue_.push_back(std::move(r));
          changed = true;
        }
      }
      for (const auto& c : conjugators_) {
        if (changed) break;
        TruncatedSeries r = sift(seriesCommutator(elems[i], c));
        if (ctx_->leading(r)) {
          queue_.push_back(std::move(r));
          changed = true;
        }
      }
    }
    drain();
  }
}

void SubgroupLattice::insert(const TruncatedSeries& s) {
  if (s.rank() != ctx_->rank()) throw RankError("element rank does not match the context");
  queue_.push_back(s.bound() == ctx_->q() ? s : s.truncated(ctx_->q()));
  drain();
  sweep();
}

void SubgroupLattice::insert(const Word& w) { insert(expand(w, ctx_->q())); }

void SubgroupLattice::insert(const std::vector<Word>& words) {
  for (const auto& w : words) {
    if (w.rank() != ctx_->rank()) throw RankError("word rank does not match the context");
    queue_.push_back(expand(w, ctx_->q()));
    drain();
  }
  sweep();
}

void SubgroupLattice::insert(const std::vector<TruncatedSeries>& elements) {
  for (const auto& s : elements) {
    if (s.rank() != ctx_->rank()) throw RankError("element rank does not match the context");
    queue_.push_back(s.bound() == ctx_->q() ? s : s.truncated(ctx_->q()));
    drain();
  }
  sweep();
}

TruncatedSeries SubgroupLattice::sift(TruncatedSeries s) const {
  while (true) {
    auto lead = ctx_->leading(s);
    if (!lead) return s;
    std::size_t i = 0;
    while (lead->coordinates[i] == 0) ++i;
    const int ordinal = ctx_->basis().stratum(lead->weight).first + static_cast<int>(i);
    auto it = pivots_.find(ordinal);
    if (it == pivots_.end()) return s;
    const Integer& c = lead->coordinates[i];
    if (c % it->second.lead != 0) return s;
    s = multiply(unitPower(it->second.element, -(c / it->second.lead)), s);
  }
}

bool SubgroupLattice::contains(const TruncatedSeries& s) const {
  if (s.rank() != ctx_->rank()) throw RankError("element rank does not match the context");
  return !ctx_->leading(sift(s.bound() == ctx_->q() ? s : s.truncated(ctx_->q())));
}

bool SubgroupLattice::contains(const Word& w) const { return contains(expand(w, ctx_->q())); }

IntMatrix SubgroupLattice::sectionLattice(int n) const {
  if (n < 1 || n >= ctx_->q()) throw DomainError("section weight outside 1..q-1");
  auto [first, last] = ctx_->basis().stratum(n);
  IntMatrix rows;
  for (const auto& [ordinal, pivot] : pivots_)
    if (pivot.weight == n) rows.push_back(pivot.row);
  return hermiteNormalForm(rows, static_cast<std::size_t>(last - first));
}

Integer SubgroupLattice::sectionIndex(int n) const {
  auto [first, last] = ctx_->basis().stratum(n);
  return latticeIndex(sectionLattice(n), static_cast<std::size_t>(last - first));
}

std::vector<TruncatedSeries> SubgroupLattice::pivotElements() const {
  std::vector<TruncatedSeries> out;
  out.reserve(pivots_.size());
  for (const auto& [ordinal, pivot] : pivots_) out.push_back(pivot.element);
  return out;
}

SubgroupLattice closeSubgroup(const std::vector<Word>& gens, std::shared_ptr<const NilpotentContext> ctx,
                              bool normal) {
  if (gens.empty()) throw DomainError("closeSubgroup needs at least one generator");
  auto conj = normal ? generatorSeries(*ctx) : std::vector<TruncatedSeries>{};
  SubgroupLattice lat(std::move(ctx), std::move(conj));
  lat.insert(gens);
  return lat;
}

SubgroupLattice joinLattices(const SubgroupLattice& a, const SubgroupLattice& b) {
  if (&a.context() != &b.context()) throw DomainError("lattices live in different contexts");
  SubgroupLattice lat(a.contextPtr());
  lat.addConjugators(a.conjugators());
  lat.addConjugators(b.conjugators());
  auto elements = a.pivotElements();
  for (auto& s : b.pivotElements()) elements.push_back(std::move(s));
  lat.insert(elements);
  return lat;
}

std::string toString(LatticeRelation r) {
  switch (r) {
    case LatticeRelation::Equal: return "equal";
    case LatticeRelation::StrictlyFiner: return "strictlyFiner";
    case LatticeRelation::StrictlyCoarser: return "strictlyCoarser";
    case LatticeRelation::Incomparable: return "incomparable";
  }
  return "unknown";
}

LatticeRelation compareLattices(const SubgroupLattice& lat1, const SubgroupLattice& lat2) {
  if (&lat1.context() != &lat2.context()) throw DomainError("lattices live in different contexts");
  auto inside = [](const SubgroupLattice& x, const SubgroupLattice& y) {
    for (const auto& [ordinal, pivot] : x.pivots())
      if (!y.contains(pivot.element)) return false;
    return true;
  };
  const bool oneInTwo = inside(lat1, lat2);
  const bool twoInOne = inside(lat2, lat1);
  if (oneInTwo && twoInOne) return LatticeRelation::Equal;
  if (oneInTwo) return LatticeRelation::StrictlyFiner;
  if (twoInOne) return LatticeRelation::StrictlyCoarser;
  return LatticeRelation::Incomparable;
}

ExponentVector reduceModMuK(const ExponentVector& e, int k, const NilpotentContext& ctx) {
  const int m = ctx.rank();
  if (k < 0) throw DomainError("k must be nonnegative");
  // With k + 2 > q - 1 no coordinate can be affected, so the bound is moot.
  if (ctx.q() <= m * (k + 1) && k + 2 <= ctx.q() - 1) throw DomainError("reduceModMuK requires q > m(k+1)");
  if (e.size() != ctx.dimension()) throw DomainError("exponent vector has wrong length");
  ExponentVector out = e;
  for (std::size_t c = 0; c < e.size(); ++c) {
    const auto& bc = ctx.basis()[c];
    const bool heavy = std::any_of(bc.multidegree.begin(), bc.multidegree.end(), [k](int d) { return d >= k + 2; });
    if (heavy || bc.weight > m * (k + 1)) out[c] = 0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generator schemes

GeneratorScheme GeneratorScheme::parse(const std::string& text) {
  GeneratorScheme s;
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  const std::string& name = parts[0];
  auto number = [&](std::size_t i) {
    if (i >= parts.size()) throw ParseError("scheme '" + text + "' is missing a parameter");
    try {
      std::size_t used = 0;
      int v = std::stoi(parts[i], &used);
      if (used != parts[i].size()) throw ParseError("bad scheme parameter '" + parts[i] + "'");
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("bad scheme parameter '" + parts[i] + "'");
    }
  };
  std::size_t expected = 2;
  if (name == "gamma") s.kind = Kind::Gamma;
  else if (name == "mu") s.kind = Kind::Mu;
  else if (name == "mu27") s.kind = Kind::Mu27;
  else if (name == "mu28") s.kind = Kind::Mu28;
  else if (name == "delta") s.kind = Kind::Delta;
  else if (name == "delta-conj") s.kind = Kind::DeltaConj;
  else if (name == "epsilon") s.kind = Kind::Epsilon;
  else if (name == "nu") s.kind = Kind::Nu;
  else if (name == "nk") {
    s.kind = Kind::Nk;
    if (parts.size() == 3) {
      s.component = number(2);
      expected = 3;
    }
  } else if (name == "derived2") {
    s.kind = Kind::Derived2;
    expected = 1;
  } else {
    throw ParseError("unknown scheme '" + name + "'");
  }
  if (parts.size() != expected) throw ParseError("scheme '" + text + "' has the wrong number of parameters");
  if (expected >= 2) s.parameter = number(1);
  const bool isK = s.kind == Kind::Mu || s.kind == Kind::Mu27 || s.kind == Kind::Mu28 || s.kind == Kind::Delta ||
                   s.kind == Kind::DeltaConj || s.kind == Kind::Nk;
  if (isK && s.parameter < 0) throw DomainError("scheme parameter k must be nonnegative");
  if (!isK && expected >= 2 && s.parameter < 1) throw DomainError("scheme parameter n must be positive");
  return s;
}

std::string GeneratorScheme::name() const {
  const std::string p = std::to_string(parameter);
  switch (kind) {
    case Kind::Gamma: return "gamma:" + p;
    case Kind::Mu: return "mu:" + p;
    case Kind::Mu27: return "mu27:" + p;
    case Kind::Mu28: return "mu28:" + p;
    case Kind::Delta: return "delta:" + p;
    case Kind::DeltaConj: return "delta-conj:" + p;
    case Kind::Epsilon: return "epsilon:" + p;
    case Kind::Nu: return "nu:" + p;
    case Kind::Nk: return "nk:" + p + (component > 0 ? ":" + std::to_string(component) : "");
    case Kind::Derived2: return "derived2";
  }
  return "unknown";
}

int GeneratorScheme::effectiveLength(int rank) const {
  if (length > 0) return length;
  if (rank <= 2) return 4;
  if (rank == 3) return 2;
  return 1;
}

int GeneratorScheme::effectiveConjDepth() const { return conjDepth > 0 ? conjDepth : parameter + 1; }

namespace {

class WordCollector {
 public:
  WordCollector(int precision, std::size_t cap) : precision_(precision), cap_(cap) {}

  /// Keeps w if its class modulo gamma_precision is new.
  bool add(const Word& w) {
    if (precision_ <= 1) {
      if (!words_.empty()) return false;
      words_.push_back(w);
      return true;
    }
    if (!seen_.insert(expand(w, precision_)).second) return false;
    if (words_.size() >= cap_) throw ResourceError("instantiation exceeds " + std::to_string(cap_) + " words");
    words_.push_back(w);
    return true;
  }
  std::vector<Word>& words() { return words_; }

 private:
  int precision_;
  std::size_t cap_;
  std::unordered_set<TruncatedSeries, TruncatedSeriesHash> seen_;
  std::vector<Word> words_;
};

std::vector<Word> distinctWords(int rank, int length, int precision, std::size_t cap) {
  WordCollector c(precision, cap);
  for (const auto& w : enumerateWords(rank, length)) c.add(w);
  return std::move(c.words());
}

/// Levels 0..depth-1 of the iterated normal closure of generator m; the last
/// level is kept modulo gamma_topPrecision, level j modulo gamma_{top-(depth-1-j)}.
std::vector<Word> closureTower(int rank, int m, int length, int depth, int topPrecision, std::size_t cap) {
  std::vector<Word> level = distinctWords(rank, length, topPrecision - (depth - 1), cap);
  const Word gen = Word::generator(rank, m);
  for (int j = 1; j < depth; ++j) {
    std::vector<Word> conj;
    for (const auto& h : level) {
      conj.push_back(conjugate(gen, h));
      conj.push_back(conjugate(inverse(gen), h));
    }
    WordCollector next(topPrecision - (depth - 1 - j), cap);
    next.add(Word::identity(rank));
    for (const auto& c : conj) next.add(c);
    for (const auto& c1 : conj)
      for (const auto& c2 : conj) next.add(multiply(c1, c2));
    level = std::move(next.words());
  }
  return level;
}

void forEachTuple(std::size_t base, std::size_t length, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(length, 0);
  if (base == 0 && length > 0) return;
  while (true) {
    f(idx);
    std::size_t pos = 0;
    while (pos < length && ++idx[pos] == base) idx[pos++] = 0;
    if (pos == length) return;
  }
}

std::vector<Word> mu28Words(const NilpotentContext& ctx, int k) {
  std::vector<Word> out;
  const int m = ctx.rank();
  for (std::size_t c = 0; c < ctx.dimension(); ++c) {
    const auto& bc = ctx.basis()[c];
    const bool heavy = std::any_of(bc.multidegree.begin(), bc.multidegree.end(), [k](int d) { return d >= k + 2; });
    if (bc.weight > m * (k + 1) || heavy) out.push_back(ctx.basis().asWord(static_cast<int>(c)));
  }
  return out;
}

}  // namespace

Instantiation instantiate(const GeneratorScheme& scheme, const NilpotentContext& ctx) {
  const int m = ctx.rank();
  const int q = ctx.q();
  const int L = scheme.effectiveLength(m);
  const int p = scheme.parameter;
  const std::size_t cap = scheme.maxWords > 0 ? scheme.maxWords : defaultLimits().maxInstantiatedWords;
  WordCollector out(q, cap);
  Instantiation inst;
  std::vector<Word> gens;
  for (int i = 1; i <= m; ++i) gens.push_back(Word::generator(m, i));

  switch (scheme.kind) {
    case GeneratorScheme::Kind::Gamma: {
      forEachTuple(static_cast<std::size_t>(m), static_cast<std::size_t>(p), [&](const std::vector<std::size_t>& idx) {
        std::vector<Word> entries;
        for (auto i : idx) entries.push_back(gens[i]);
        out.add(leftNormed(entries));
      });
      break;
    }
    case GeneratorScheme::Kind::Epsilon: {
      auto words = distinctWords(m, L, q - p, cap);
      for (const auto& g : words)
        for (const auto& h : words) {
          std::vector<Word> entries{g};
          for (int j = 0; j < p; ++j) entries.push_back(h);
          out.add(leftNormed(entries));
        }
      break;
    }
    case GeneratorScheme::Kind::Nu: {
      auto words = distinctWords(m, L, q - p, cap);
      const auto& powers = scheme.powers;
      for (const auto& h : words)
        for (const auto& g : words) {
          forEachTuple(powers.size(), static_cast<std::size_t>(p), [&](const std::vector<std::size_t>& idx) {
            std::vector<Word> entries{h};
            for (auto i : idx) entries.push_back(power(g, powers[i]));
            out.add(leftNormed(entries));
          });
        }
      break;
    }
    case GeneratorScheme::Kind::Delta:
    case GeneratorScheme::Kind::DeltaConj: {
      auto words = distinctWords(m, L, q - p - 2, cap);
      for (const auto& mm : gens)
        for (const auto& g : words) {
          if (scheme.kind == GeneratorScheme::Kind::Delta) {
            std::vector<Word> entries{g};
            for (int j = 0; j < p + 2; ++j) entries.push_back(mm);
            out.add(leftNormed(entries));
          } else {
            Word tower = g;
            for (int j = 0; j <= p; ++j) tower = conjugate(mm, tower);
            out.add(commutator(mm, tower));
          }
        }
      break;
    }
    case GeneratorScheme::Kind::Mu: {
      const int depth = scheme.effectiveConjDepth();
      for (int i = 1; i <= m; ++i) {
        const Word& mm = gens[static_cast<std::size_t>(i - 1)];
        for (const auto& g : closureTower(m, i, L, depth, q - 2, cap)) out.add(commutator(mm, conjugate(mm, g)));
      }
      break;
    }
    case GeneratorScheme::Kind::Mu27: {
      auto words = distinctWords(m, L, q - p - 2, cap);
      for (const auto& mm : gens) {
        std::vector<Word> conj;
        for (const auto& u : words) conj.push_back(conjugate(mm, u));
        forEachTuple(conj.size(), static_cast<std::size_t>(p + 1), [&](const std::vector<std::size_t>& idx) {
          std::vector<Word> entries{mm};
          for (auto i : idx) entries.push_back(conj[i]);
          out.add(leftNormed(entries));
        });
      }
      break;
    }
    case GeneratorScheme::Kind::Mu28: {
      for (const auto& w : mu28Words(ctx, p)) out.add(w);
      inst.normal = false;
      break;
    }
    case GeneratorScheme::Kind::Nk: {
      const int depth = scheme.effectiveConjDepth();
      for (int i = 1; i <= m; ++i) {
        if (scheme.component > 0 && scheme.component != i) continue;
        const Word& mm = gens[static_cast<std::size_t>(i - 1)];
        for (const auto& g : closureTower(m, i, L, depth, q - 1, cap)) out.add(commutator(inverse(g), conjugate(g, mm)));
      }
      for (const auto& w : mu28Words(ctx, p)) out.add(w);
      inst.normal = false;
      break;
    }
    case GeneratorScheme::Kind::Derived2: {
      auto words = distinctWords(m, L, q - 3, cap);
      std::vector<Word> base;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) base.push_back(commutator(gens[static_cast<std::size_t>(i)], gens[static_cast<std::size_t>(j)]));
      for (const auto& c1 : base)
        for (const auto& c2 : base)
          for (const auto& v : words) out.add(commutator(c1, conjugate(c2, v)));
      break;
    }
  }
  for (auto& w : out.words())
    if (!w.isIdentity()) inst.words.push_back(std::move(w));
  if (inst.words.empty()) inst.words.push_back(Word::identity(m));
  return inst;
}

SubgroupLattice buildScheme(const GeneratorScheme& scheme, std::shared_ptr<const NilpotentContext> ctx) {
  auto inst = instantiate(scheme, *ctx);
  return closeSubgroup(inst.words, std::move(ctx), inst.normal);
}

StableLattice buildStable(const GeneratorScheme& scheme, std::shared_ptr<const NilpotentContext> ctx) {
  const int L = scheme.effectiveLength(ctx->rank());
  GeneratorScheme upper = scheme;
  upper.length = L;
  SubgroupLattice top = buildScheme(upper, ctx);
  bool stable = false;
  if (L >= 2) {
    GeneratorScheme lower = scheme;
    lower.length = L - 1;
    stable = compareLattices(buildScheme(lower, ctx), top) == LatticeRelation::Equal;
  }
  return StableLattice{std::move(top), stable, L};
}

namespace {

std::vector<Integer> engelValue(const std::vector<Integer>& v, const std::vector<Integer>& w, int n) {
  std::vector<Integer> poly = v;
  const std::size_t m = w.size();
  for (int j = 0; j < n; ++j) {
    std::vector<Integer> next(poly.size() * m, Integer(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (poly[i] == 0) continue;
      for (std::size_t a = 0; a < m; ++a) {
        if (w[a] == 0) continue;
        const Integer prod = poly[i] * w[a];
        next[i * m + a] += prod;
        next[a * poly.size() + i] -= prod;
      }
    }
    poly = std::move(next);
  }
  return poly;
}

IntMatrix engelSpanAt(int n, const NilpotentContext& ctx, int box) {
  const std::size_t m = static_cast<std::size_t>(ctx.rank());
  auto [first, last] = ctx.basis().stratum(n + 1);
  const std::size_t dim = static_cast<std::size_t>(last - first);
  IntMatrix hnf;
  std::vector<std::vector<Integer>> vectors;
  forEachTuple(static_cast<std::size_t>(2 * box + 1), m, [&](const std::vector<std::size_t>& idx) {
    std::vector<Integer> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = static_cast<long>(idx[i]) - box;
    vectors.push_back(std::move(v));
  });
  for (const auto& v : vectors)
    for (const auto& w : vectors) {
      auto coords = ctx.solveWeight(n + 1, engelValue(v, w, n));
      if (!coords) throw InternalError("Engel value is not a Lie element");
      if (latticeContains(hnf, *coords)) continue;
      IntMatrix rows = hnf;
      rows.push_back(std::move(*coords));
      hnf = hermiteNormalForm(std::move(rows), dim);
    }
  return hnf;
}

}  // namespace

EngelSpan engelImageSpan(int n, const NilpotentContext& ctx, int box) {
  if (n < 1) throw DomainError("Engel length must be positive");
  if (n + 1 >= ctx.q()) throw DomainError("engelImageSpan requires n + 1 < q");
  if (box < 1) throw DomainError("box must be positive");
  auto [first, last] = ctx.basis().stratum(n + 1);
  EngelSpan span;
  span.hnf = engelSpanAt(n, ctx, box);
  span.index = latticeIndex(span.hnf, static_cast<std::size_t>(last - first));
  span.stable = engelSpanAt(n, ctx, box + 1) == span.hnf;
  return span;
}

}  // namespace commcalc
